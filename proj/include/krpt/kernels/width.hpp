#ifndef KRPT_KERNELS_WIDTH_HPP
#define KRPT_KERNELS_WIDTH_HPP

/**
 * @file width.hpp
 * @brief Gaussian half-width selection for a reduced particle count.
 *
 * Three strategies are provided:
 *  - match at a single time t*: the cross-covariance of the Gaussian system
 *    equals that of the Dirac system at t*, giving a closed-form width;
 *  - least squares: minimize the distance between the Dirac and Gaussian
 *    mean-concentration solutions over a set of times;
 *  - variable: re-evaluate the single-time width at the current simulation time.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/kernel_spec.hpp"

namespace krpt::kernels {

/// The parameters the single-time width depends on.
struct WidthParams {
  std::size_t n_gaussian = 0;
  std::size_t n_delta = 0;
  double diffusion = 0.0;
  double omega = 0.0;
  int dim = 1;

  static WidthParams from(const Config& config);
  double count_ratio() const noexcept {
    return static_cast<double>(n_gaussian) / static_cast<double>(n_delta);
  }
};

/// l_G(t*)^2 before the square root; negative once t* exceeds tau*.
double matching_radicand(double t_star, const WidthParams& p);

/// Half-width matching the Dirac cross-covariance at t*. Throws InfeasibleMatchTimeError past tau*.
double width_at_time(double t_star, const WidthParams& p);

struct MatchingTime {
  double value = 0.0;
  bool unbounded = false;  ///< true when N_G == N_delta (or D == 0): every t* is feasible
};

/**
 * @brief Largest feasible matching time tau*.
 *
 * Brackets by doubling from t_lo until the radicand turns negative (giving up
 * past 1e12, reported as unbounded) and bisects to relative tolerance 1e-10.
 */
MatchingTime max_matching_time(const WidthParams& p, double t_lo);

/// Maps a kernel to simulated mean concentrations on a time grid.
using MeanConcentrationSolver =
    std::function<std::vector<double>(const KernelSpec& kernel, std::span<const double> times)>;

struct LeastSquaresOptions {
  std::optional<std::vector<double>> times;  ///< T*; unset means the default 100-point log grid
  double upper_fraction = 0.25;    ///< search l_G in (0, upper_fraction * Omega]
  double tolerance_fraction = 1e-4;
};

struct LeastSquaresResult {
  double width = 0.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  bool exceeds_domain_rule = false;  ///< width / Omega > 0.12
};

/// 100 log-spaced times in [1e-2, t_final].
std::vector<double> default_matching_times(const Config& config);

/// sqrt(sum_k (a_k - b_k)^2)
double least_squares_objective(std::span<const double> reference, std::span<const double> candidate);

/**
 * @brief Golden-section search for the width minimizing the least-squares objective.
 *
 * The Dirac reference is solved once; each probe solves the Gaussian system.
 * Ties are broken toward the smaller width. Throws EmptyTimeGrid for an
 * explicitly empty T* and propagates solver errors.
 */
LeastSquaresResult least_squares_width(const Config& config, const LeastSquaresOptions& options,
                                       const MeanConcentrationSolver& solver);

/// Rule of thumb for domain effects: keep l_G / Omega below this.
inline constexpr double kDomainEffectRatio = 0.12;

/// Width tracked in time: width_at_time(max(t, dt/2)), clamped to the tau* value past tau*.
class VariableWidth {
 public:
  explicit VariableWidth(const Config& config);

  double operator()(double t) const { return evaluate(t, nullptr); }
  double evaluate(double t, bool* clamped) const;

  const MatchingTime& tau_star() const noexcept { return tau_star_; }

 private:
  WidthParams params_;
  double half_step_;
  MatchingTime tau_star_;
};

double variable_width(double t, const Config& config);

struct SpecificTime {
  double t_star = 0.0;
};
struct LeastSquares {
  LeastSquaresOptions options;
};
struct Variable {};

using WidthSelection = std::variant<SpecificTime, LeastSquares, Variable>;

/// Resolves a selection strategy into a kernel for the Gaussian population.
KernelSpec resolve_kernel(const Config& config, const WidthSelection& selection,
                          const MeanConcentrationSolver& solver);

}  // namespace krpt::kernels

#endif  // KRPT_KERNELS_WIDTH_HPP
