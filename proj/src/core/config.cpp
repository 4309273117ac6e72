#include "krpt/core/config.hpp"

#include <cmath>
#include <vector>

#include "krpt/core/errors.hpp"

namespace krpt {

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::Periodic ? "periodic" : "reflecting";
}

std::optional<Boundary> parse_boundary(std::string_view text) {
  if (text == "reflecting") return Boundary::Reflecting;
  if (text == "periodic") return Boundary::Periodic;
  return std::nullopt;
}

Config::Config(const SimConfig& raw) : params_(raw) {
  mass_delta_ = particle_mass(raw.n_delta);
  mass_gaussian_ = particle_mass(raw.n_gaussian);
  spacing_delta_ = raw.omega / static_cast<double>(raw.n_delta);
  spacing_gaussian_ = raw.omega / static_cast<double>(raw.n_gaussian);
  side_length_ = raw.dim == 1 ? raw.omega : std::pow(raw.omega, 1.0 / raw.dim);
  // A few ulps of slack so that e.g. 1000 / 0.1 gives 10000 steps, not 9999.
  steps_ = static_cast<std::size_t>(std::floor(raw.t_final / raw.dt * (1.0 + 1e-12)));
}

double Config::particle_mass(std::size_t n) const noexcept {
  return params_.c0 * params_.omega / static_cast<double>(n);
}

Config validate_config(const SimConfig& raw) {
  std::vector<ConfigViolation> violations;
  auto check = [&](bool ok, ConfigViolation v) {
    if (!ok) violations.push_back(v);
  };

  const bool finite = std::isfinite(raw.diffusion) && std::isfinite(raw.rate_constant) &&
                      std::isfinite(raw.c0) && std::isfinite(raw.omega) &&
                      std::isfinite(raw.dt) && std::isfinite(raw.t_final);
  check(finite, ConfigViolation::NonFiniteParameter);
  check(raw.diffusion >= 0.0, ConfigViolation::NegativeDiffusion);
  check(raw.rate_constant >= 0.0, ConfigViolation::NegativeRateConstant);
  check(raw.c0 > 0.0, ConfigViolation::NonPositiveConcentration);
  check(raw.omega > 0.0, ConfigViolation::NonPositiveDomain);
  check(raw.dim >= 1, ConfigViolation::NonPositiveDimension);
  check(raw.n_delta >= 1, ConfigViolation::ZeroDiracCount);
  check(raw.n_gaussian >= 1 && raw.n_gaussian <= raw.n_delta,
        ConfigViolation::GaussianCountOutOfRange);
  check(raw.dt > 0.0, ConfigViolation::NonPositiveTimeStep);
  check(raw.t_final >= raw.dt, ConfigViolation::FinalTimeBeforeStep);
  check(raw.n_realizations >= 1, ConfigViolation::ZeroRealizations);

  if (!violations.empty()) throw ConfigError(std::move(violations));
  return Config(raw);
}

double damkohler(const Config& config, std::size_t n_particles) {
  if (config.diffusion() == 0.0) {
    throw Error(ErrorCode::ZeroDiffusion, "particle Damkohler number is undefined for D = 0");
  }
  if (n_particles == 0) throw Error(ErrorCode::InvalidArgument, "particle count must be positive");
  const double dx = config.omega() / static_cast<double>(n_particles);
  return config.rate_constant() * config.c0() * dx * dx / config.diffusion();
}

}  // namespace krpt
