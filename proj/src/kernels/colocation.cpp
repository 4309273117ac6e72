#include "krpt/kernels/colocation.hpp"

#include <numbers>

#include "krpt/core/errors.hpp"

namespace krpt::kernels {

PairKernel make_pair_kernel(double half_width, double diffusion, double dt, int dim) {
  if (half_width < 0.0 || diffusion < 0.0 || !(dt > 0.0) || dim < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "co-location needs half-width >= 0, D >= 0, dt > 0, d >= 1");
  }
  const double variance = half_width * half_width + 2.0 * diffusion * dt;
  if (!(variance > 0.0)) {
    throw Error(ErrorCode::DegenerateKernel,
                "zero total variance: a Dirac kernel without diffusion never co-locates");
  }
  PairKernel k;
  k.variance = variance;
  const double base = 4.0 * std::numbers::pi * variance;
  k.peak = dim == 1 ? 1.0 / std::sqrt(base) : std::pow(base, -0.5 * dim);
  k.inv_four_variance = 1.0 / (4.0 * variance);
  return k;
}

double colocation_probability(double separation, double half_width, double diffusion, double dt,
                              int dim) {
  const PairKernel k = make_pair_kernel(half_width, diffusion, dt, dim);
  return k(separation * separation);
}

}  // namespace krpt::kernels
