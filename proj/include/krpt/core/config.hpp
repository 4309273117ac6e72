#ifndef KRPT_CORE_CONFIG_HPP
#define KRPT_CORE_CONFIG_HPP

/**
 * @file config.hpp
 * @brief Simulation parameters and their validated form.
 *
 * All quantities are in simulation units. The defaults reproduce the Dirac
 * base case used throughout the experiments: D = 1e-5, k = 5, C0 = 1,
 * Omega = 1, N_delta = 1000 (particle Damkohler number 0.5).
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace krpt {

/// Treatment of the edges of the cube [0, Omega^(1/d)]^d.
enum class Boundary {
  Reflecting,  ///< walls: particles mirror back, kernels do not interact across the edge
  Periodic,    ///< wrap-around with minimum-image separations
};

std::string_view to_string(Boundary boundary);
/// "reflecting" or "periodic"; nullopt otherwise.
std::optional<Boundary> parse_boundary(std::string_view text);

/// Raw, unvalidated parameters. Field names double as config-file keys.
struct SimConfig {
  double diffusion = 1.0e-5;    ///< D [L^2/T]
  double rate_constant = 5.0;   ///< k [L^d/(mol T)]
  double c0 = 1.0;              ///< initial mean concentration [mol/L^d]
  double omega = 1.0;           ///< domain measure [L^d]
  int dim = 1;                  ///< spatial dimension d
  std::size_t n_delta = 1000;   ///< Dirac particle count per species
  std::size_t n_gaussian = 100; ///< Gaussian particle count per species
  double dt = 0.1;              ///< time step [T]
  double t_final = 1000.0;      ///< stop time [T]
  std::uint64_t seed = 1;
  std::size_t n_realizations = 6;
  Boundary boundary = Boundary::Reflecting;

  bool operator==(const SimConfig&) const = default;
};

/**
 * @brief Validated, immutable configuration with cached derived quantities.
 *
 * Only obtainable through validate_config().
 */
class Config {
 public:
  const SimConfig& params() const noexcept { return params_; }

  double diffusion() const noexcept { return params_.diffusion; }
  double rate_constant() const noexcept { return params_.rate_constant; }
  double c0() const noexcept { return params_.c0; }
  double omega() const noexcept { return params_.omega; }
  int dim() const noexcept { return params_.dim; }
  std::size_t n_delta() const noexcept { return params_.n_delta; }
  std::size_t n_gaussian() const noexcept { return params_.n_gaussian; }
  double dt() const noexcept { return params_.dt; }
  double t_final() const noexcept { return params_.t_final; }
  std::uint64_t seed() const noexcept { return params_.seed; }
  std::size_t n_realizations() const noexcept { return params_.n_realizations; }
  Boundary boundary() const noexcept { return params_.boundary; }

  /// m_delta = C0 * Omega / N_delta
  double mass_delta() const noexcept { return mass_delta_; }
  /// m_G = C0 * Omega / N_G
  double mass_gaussian() const noexcept { return mass_gaussian_; }
  /// Mean inter-particle spacing Omega / N_delta.
  double spacing_delta() const noexcept { return spacing_delta_; }
  double spacing_gaussian() const noexcept { return spacing_gaussian_; }
  /// Side of the cubic domain, Omega^(1/d).
  double side_length() const noexcept { return side_length_; }
  /// Number of whole time steps in [0, t_final].
  std::size_t steps() const noexcept { return steps_; }

  /// Mass of one particle when n particles carry C0 * Omega.
  double particle_mass(std::size_t n) const noexcept;

  bool operator==(const Config&) const = default;

 private:
  friend Config validate_config(const SimConfig& raw);
  explicit Config(const SimConfig& raw);

  SimConfig params_;
  double mass_delta_ = 0.0;
  double mass_gaussian_ = 0.0;
  double spacing_delta_ = 0.0;
  double spacing_gaussian_ = 0.0;
  double side_length_ = 0.0;
  std::size_t steps_ = 0;
};

/// Checks every invariant of `raw`; throws ConfigError naming each violation.
Config validate_config(const SimConfig& raw);

/// Particle Damkohler number k C0 (Omega/N)^2 / D. Throws ZeroDiffusion when D == 0.
double damkohler(const Config& config, std::size_t n_particles);

}  // namespace krpt

#endif  // KRPT_CORE_CONFIG_HPP
