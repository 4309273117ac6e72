#include "krpt/engine/particles.hpp"

#include <cmath>
#include <random>

namespace krpt::engine {

double Population::total_mass() const noexcept {
  double sum = 0.0;
  for (double m : masses) sum += m;
  return sum;
}

double ParticleSystem::mean_concentration() const noexcept {
  return a.total_mass() / std::pow(side, dim);
}

std::size_t particle_count(const Config& config, const KernelSpec& kernel) {
  return kernel.uses_gaussian_count() ? config.n_gaussian() : config.n_delta();
}

double wrap(double x, double side) noexcept {
  if (x >= 0.0 && x < side) return x;
  double w = x - side * std::floor(x / side);
  // floor can leave w == side when x is a tiny negative number.
  if (w >= side) w = 0.0;
  return w;
}

double reflect(double x, double side) noexcept {
  if (x >= 0.0 && x <= side) return x;
  const double w = wrap(x, 2.0 * side);
  return w > side ? 2.0 * side - w : w;
}

namespace {

Population uniform_population(std::size_t n, int dim, double side, double mass, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, side);
  Population p;
  p.positions.resize(n * static_cast<std::size_t>(dim));
  for (double& x : p.positions) x = wrap(uniform(rng), side);
  p.masses.assign(n, mass);
  return p;
}

}  // namespace

ParticleSystem initialize(const Config& config, const KernelSpec& kernel, Rng& rng) {
  const std::size_t n = particle_count(config, kernel);
  ParticleSystem s;
  s.kernel = kernel;
  s.boundary = config.boundary();
  s.dim = config.dim();
  s.side = config.side_length();
  s.particle_mass = config.particle_mass(n);
  s.a = uniform_population(n, s.dim, s.side, s.particle_mass, rng);
  s.b = uniform_population(n, s.dim, s.side, s.particle_mass, rng);
  return s;
}

ParticleSystem initialize(const Config& config, const KernelSpec& kernel, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return initialize(config, kernel, rng);
}

}  // namespace krpt::engine
