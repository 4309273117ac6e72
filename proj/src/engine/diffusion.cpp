#include "krpt/engine/diffusion.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "krpt/core/errors.hpp"

namespace krpt::engine {

void diffusion_step(ParticleSystem& system, const Config& config, Rng& rng, int noise_substeps) {
  if (noise_substeps < 1) throw Error(ErrorCode::InvalidArgument, "noise_substeps must be >= 1");
  const double D = config.diffusion();
  if (D == 0.0) return;
  const double sub_scale = std::sqrt(2.0 * D * config.dt() / noise_substeps);
  const double side = system.side;
  const bool periodic = system.boundary == Boundary::Periodic;
  auto move = [&](double x, double dx) {
    return periodic ? wrap(x + dx, side) : reflect(x + dx, side);
  };
  auto& xa = system.a.positions;
  auto& xb = system.b.positions;

  if (noise_substeps == 1) {
    std::normal_distribution<double> normal;
    for (double& x : xa) x = move(x, sub_scale * normal(rng));
    for (double& x : xb) x = move(x, sub_scale * normal(rng));
    return;
  }
  std::vector<double> da(xa.size(), 0.0);
  std::vector<double> db(xb.size(), 0.0);
  for (int r = 0; r < noise_substeps; ++r) {
    // A fresh distribution per sub-step matches the draw pattern of single steps.
    std::normal_distribution<double> normal;
    for (double& d : da) d += sub_scale * normal(rng);
    for (double& d : db) d += sub_scale * normal(rng);
  }
  for (std::size_t i = 0; i < xa.size(); ++i) xa[i] = move(xa[i], da[i]);
  for (std::size_t i = 0; i < xb.size(); ++i) xb[i] = move(xb[i], db[i]);
}

}  // namespace krpt::engine
