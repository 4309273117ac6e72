#ifndef KRPT_ENGINE_REACTION_HPP
#define KRPT_ENGINE_REACTION_HPP

/**
 * @file reaction.hpp
 * @brief The pairwise mass-transfer reaction step.
 *
 * For every A particle j and B particle l the pair loses
 *
 *   dm = k dt m_A,j m_B,l v(x_A,j - x_B,l)
 *
 * from both masses, where v is the co-location density of the kernel.
 * Separations use the minimum-image convention when the boundary is periodic
 * and the raw difference when it is reflecting.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/engine/particles.hpp"
#include "krpt/kernels/colocation.hpp"
#include "krpt/kernels/width.hpp"

namespace krpt::engine {

enum class MassUpdate {
  Sequential,  ///< masses change inside the loop; A outer, B inner, ascending
  Summed,      ///< every decrement uses start-of-step masses
};

enum class PairSearch {
  Exact,     ///< all N_A x N_B pairs
  CellList,  ///< pairs within six standard deviations of v only
};

struct ReactionOptions {
  MassUpdate update = MassUpdate::Sequential;
  PairSearch search = PairSearch::Exact;
  bool vectorized = true;  ///< false evaluates v with the scalar exp, bit-for-bit like a naive loop
};

/// Masses may dip this far below zero (relative to m_p) from round-off before MassOverdraw.
inline constexpr double kOverdrawTolerance = 1e-12;

/**
 * @brief Reusable reaction step with scratch buffers.
 *
 * Pairs whose decrement is below half an ulp of both masses are skipped;
 * they cannot change any stored value, so the result equals the naive loop.
 * Throws MassOverdraw when a mass falls below -1e-12 m_p; smaller negative
 * round-off is reset to zero.
 */
class ReactionStepper {
 public:
  ReactionStepper(const Config& config, const KernelSpec& kernel, ReactionOptions options = {});

  void step(ParticleSystem& system);

  /// Kernel half-width used for a step starting at time t.
  double width_at(double t);

  /// True once the variable width has been clamped at tau*.
  bool clamped() const noexcept { return clamped_; }

 private:
  void react_candidates(double& mass_a, std::vector<double>& masses_b, double kdt);
  void gather_exact(const ParticleSystem& s, std::size_t j, double q_max);
  void gather_cells(const ParticleSystem& s, std::size_t j, double q_max);
  void build_cells(const ParticleSystem& s, double cutoff);
  std::size_t cell_of(double x) const;

  Config config_;
  KernelSpec kernel_;
  ReactionOptions options_;
  std::optional<kernels::VariableWidth> variable_;
  bool clamped_ = false;
  kernels::PairKernel pair_;

  std::vector<double> squared_;
  std::vector<std::uint32_t> index_;
  std::vector<double> candidate_q_;
  std::vector<double> weight_;
  std::vector<double> start_b_;

  std::size_t n_cells_ = 0;
  double cell_width_ = 0.0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_members_;
};

/// One reaction step with a temporary stepper.
void reaction_step(ParticleSystem& system, const Config& config, ReactionOptions options = {});

}  // namespace krpt::engine

#endif  // KRPT_ENGINE_REACTION_HPP
