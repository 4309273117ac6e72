#include "krpt/engine/run.hpp"

#include <algorithm>
#include <cmath>

#include "krpt/core/errors.hpp"
#include "krpt/core/parallel.hpp"
#include "krpt/core/rng.hpp"
#include "krpt/engine/diffusion.hpp"

namespace krpt::engine {

Snapshot take_snapshot(const ParticleSystem& system, double threshold, std::uint64_t seed) {
  Snapshot snap;
  snap.time = system.time;
  snap.threshold = threshold;
  snap.seed = seed;
  snap.kernel = system.kernel;
  snap.boundary = system.boundary;
  const auto dim = static_cast<std::size_t>(system.dim);
  auto add = [&](const Population& p, Species species) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!(p.masses[j] > threshold)) continue;
      SnapshotParticle particle;
      particle.species = species;
      particle.position.assign(p.positions.begin() + j * dim, p.positions.begin() + (j + 1) * dim);
      particle.mass = p.masses[j];
      snap.particles.push_back(std::move(particle));
    }
  };
  add(system.a, Species::A);
  add(system.b, Species::B);
  return snap;
}

RealizationResult run_realization(const Config& config, const KernelSpec& kernel,
                                  std::uint64_t seed, std::span<const double> output_grid,
                                  const RunOptions& options) {
  const std::size_t total_steps = config.steps();
  const std::vector<std::size_t> record = snap_to_steps(output_grid, config.dt(), total_steps);
  if (record.empty()) {
    throw Error(ErrorCode::EmptyTrace, "no output time falls within (0, t_final]");
  }
  const std::vector<std::size_t> snaps =
      snap_to_steps(options.snapshot_times, config.dt(), total_steps);
  const double threshold = options.snapshot_fraction * config.mass_delta();

  Rng rng = make_rng(seed);
  ParticleSystem system = initialize(config, kernel, rng);
  ReactionStepper reaction(config, kernel, options.reaction);

  RealizationResult result;
  result.trace.times.reserve(record.size());
  result.trace.mean.reserve(record.size());
  std::size_t next_record = 0;
  std::size_t next_snap = 0;
  const std::size_t last = std::max(record.back(), snaps.empty() ? 0 : snaps.back());
  for (std::size_t step = 1; step <= last; ++step) {
    reaction.step(system);
    diffusion_step(system, config, rng, options.noise_substeps);
    system.time = static_cast<double>(step) * config.dt();
    if (next_record < record.size() && record[next_record] == step) {
      result.trace.times.push_back(system.time);
      result.trace.mean.push_back(system.mean_concentration());
      ++next_record;
    }
    if (next_snap < snaps.size() && snaps[next_snap] == step) {
      result.snapshots.push_back(take_snapshot(system, threshold, seed));
      ++next_snap;
    }
  }
  result.trace.stddev.assign(result.trace.times.size(), 0.0);
  result.width_clamped = reaction.clamped();
  return result;
}

EnsembleResult run_ensemble(const Config& config, const KernelSpec& kernel,
                            std::span<const double> output_grid, const RunOptions& options) {
  const std::size_t n = config.n_realizations();
  EnsembleResult result;
  result.realizations.resize(n);
  parallel_for(n, [&](std::size_t r) {
    result.realizations[r] =
        run_realization(config, kernel, realization_seed(config.seed(), r), output_grid, options)
            .trace;
  });
  result.trace = reduce_ensemble(result.realizations);
  return result;
}

std::vector<double> default_particle_grid(const Config& config) {
  return log_time_grid(config.dt(), config.t_final(), 200);
}

}  // namespace krpt::engine
