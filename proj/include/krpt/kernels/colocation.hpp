#ifndef KRPT_KERNELS_COLOCATION_HPP
#define KRPT_KERNELS_COLOCATION_HPP

#include <cmath>
#include <span>

namespace krpt::kernels {

/**
 * @brief Co-location probability density of an A-B pair at separation |s|.
 *
 * v(s) = [4 pi (l^2 + 2 D dt)]^(-d/2) exp(-|s|^2 / (4 (l^2 + 2 D dt)))
 *
 * A Gaussian of variance 2 (l^2 + 2 D dt) per coordinate: the convolution of
 * both particles' kernels with one step of Brownian motion each.
 * Throws DegenerateKernel when l == 0 and D dt == 0.
 */
double colocation_probability(double separation, double half_width, double diffusion, double dt,
                              int dim);

/// Precomputed constants of v for one step; evaluates from squared separation.
struct PairKernel {
  double variance = 0.0;           ///< l^2 + 2 D dt
  double peak = 0.0;               ///< v(0)
  double inv_four_variance = 0.0;  ///< 1 / (4 (l^2 + 2 D dt))

  double operator()(double squared_separation) const noexcept {
    return peak * std::exp(-squared_separation * inv_four_variance);
  }

  /// Radius containing all but e^-18 of the density peak: six standard deviations.
  double cutoff_radius() const noexcept { return 6.0 * std::sqrt(2.0 * variance); }
};

PairKernel make_pair_kernel(double half_width, double diffusion, double dt, int dim);

/// out[i] = kernel(squared[i]); vectorized, may differ from the scalar path by a few ulp.
void evaluate_batch(const PairKernel& kernel, std::span<const double> squared,
                    std::span<double> out) noexcept;

}  // namespace krpt::kernels

#endif  // KRPT_KERNELS_COLOCATION_HPP
