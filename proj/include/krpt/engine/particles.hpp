#ifndef KRPT_ENGINE_PARTICLES_HPP
#define KRPT_ENGINE_PARTICLES_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/kernel_spec.hpp"
#include "krpt/core/rng.hpp"

namespace krpt::engine {

enum class Species { A, B };

/// Positions are stored row-major: coordinate c of particle j is positions[j * dim + c].
struct Population {
  std::vector<double> positions;
  std::vector<double> masses;

  std::size_t size() const noexcept { return masses.size(); }
  double total_mass() const noexcept;
};

/// A and B particles started uniformly on the cube [0, side)^dim.
struct ParticleSystem {
  Population a;
  Population b;
  KernelSpec kernel = KernelSpec::dirac();
  double time = 0.0;
  double particle_mass = 0.0;  ///< initial mass of every particle, C0 Omega / N_p
  double side = 1.0;
  int dim = 1;
  Boundary boundary = Boundary::Reflecting;

  /// Domain-average concentration of species A.
  double mean_concentration() const noexcept;
};

/// Particle count used with a kernel: N_delta for Dirac, N_G otherwise.
std::size_t particle_count(const Config& config, const KernelSpec& kernel);

/**
 * @brief Uniform random initial positions, equal masses C0 Omega / N_p.
 *
 * All A coordinates are drawn first, then all B coordinates.
 */
ParticleSystem initialize(const Config& config, const KernelSpec& kernel, Rng& rng);
ParticleSystem initialize(const Config& config, const KernelSpec& kernel, std::uint64_t seed);

/// Wraps x into [0, side).
double wrap(double x, double side) noexcept;

/// Folds x into [0, side] by mirror reflection at both walls.
double reflect(double x, double side) noexcept;

}  // namespace krpt::engine

#endif  // KRPT_ENGINE_PARTICLES_HPP
