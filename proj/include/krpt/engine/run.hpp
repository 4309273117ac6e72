#ifndef KRPT_ENGINE_RUN_HPP
#define KRPT_ENGINE_RUN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/kernel_spec.hpp"
#include "krpt/core/trace.hpp"
#include "krpt/engine/particles.hpp"
#include "krpt/engine/reaction.hpp"

namespace krpt::engine {

struct SnapshotParticle {
  Species species = Species::A;
  std::vector<double> position;
  double mass = 0.0;
};

/// Particles above a mass threshold at one time.
struct Snapshot {
  double time = 0.0;
  double threshold = 0.0;  ///< absolute mass threshold applied
  std::uint64_t seed = 0;
  KernelSpec kernel = KernelSpec::dirac();
  Boundary boundary = Boundary::Reflecting;
  std::vector<SnapshotParticle> particles;
};

struct RunOptions {
  ReactionOptions reaction;
  int noise_substeps = 1;
  std::vector<double> snapshot_times;
  double snapshot_fraction = 0.02;  ///< threshold as a fraction of the Dirac particle mass
};

struct RealizationResult {
  ConcentrationTrace trace;
  std::vector<Snapshot> snapshots;
  bool width_clamped = false;
};

/**
 * @brief One realization: reaction then diffusion each step until t_final.
 *
 * The mean concentration sum(m_A) / Omega is recorded after the steps nearest
 * to the requested times (see snap_to_steps); trace times are the step times.
 * Throws EmptyTrace when no requested time falls within the run.
 */
RealizationResult run_realization(const Config& config, const KernelSpec& kernel,
                                  std::uint64_t seed, std::span<const double> output_grid,
                                  const RunOptions& options = {});

/// Takes a snapshot of the current system state.
Snapshot take_snapshot(const ParticleSystem& system, double threshold, std::uint64_t seed);

struct EnsembleResult {
  ConcentrationTrace trace;                      ///< mean and sample std per time
  std::vector<ConcentrationTrace> realizations;  ///< in realization order
};

/**
 * @brief n_realizations runs with seeds seed ^ r, executed concurrently.
 *
 * The reduction is independent of completion order. Worker count is capped by
 * the KRPT_THREADS environment variable.
 */
EnsembleResult run_ensemble(const Config& config, const KernelSpec& kernel,
                            std::span<const double> output_grid, const RunOptions& options = {});

/// Default particle output grid: 200 log-spaced times in [dt, t_final].
std::vector<double> default_particle_grid(const Config& config);

}  // namespace krpt::engine

#endif  // KRPT_ENGINE_RUN_HPP
