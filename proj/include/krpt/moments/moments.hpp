#ifndef KRPT_MOMENTS_MOMENTS_HPP
#define KRPT_MOMENTS_MOMENTS_HPP

/**
 * @file moments.hpp
 * @brief Mean-concentration moment equation and its analytic companions.
 *
 * For A + B -> 0 with equal initial species the mean concentration obeys
 *
 *   dC/dt = -k (C^2 + g_p(t)),   g_p(t) = psi_p(t) [exp(-4k int_0^t C) - 1],
 *
 * where psi_p depends on the initial autocovariance of the particle field
 * (Dirac or Gaussian kernel). The third-order moment is neglected.
 */

#include <cstddef>
#include <span>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/kernel_spec.hpp"
#include "krpt/core/trace.hpp"
#include "krpt/kernels/width.hpp"

namespace krpt::moments {

/// C0 / (1 + C0 k t)
double well_mixed(double t, double c0, double k);

/**
 * @brief psi_p(t) for the kernel's particle population.
 *
 * Dirac:    1/2 C0 m_delta [(8 pi D t)^(-d/2) - 1/Omega]
 * Gaussian: 1/2 C0 m_G [(4 pi (l^2 + 2 D t))^(-d/2) - 1/Omega]
 *
 * Throws SingularAtZero for Dirac at t = 0, UnsupportedKernel for the variable kernel.
 */
double psi(double t, const KernelSpec& kernel, const Config& config);

/// g_p(t) given the accumulated integral of the mean; 0 at t = 0.
double cross_covariance(double t, const KernelSpec& kernel, const Config& config,
                        double integral_of_mean);

struct SolverOptions {
  double initial_step = 0.0;  ///< <= 0 selects 1e-3 / (k C0)
  double rel_tol = 1e-6;      ///< on C(T) between successive halvings
  int max_halvings = 12;
};

struct MomentSolution {
  ConcentrationTrace trace;       ///< stddev is all zero
  std::vector<double> integral;   ///< int_0^t C on the grid
  std::vector<double> g;          ///< g_p(t) on the grid
  KernelSpec kernel = KernelSpec::dirac();
  double step = 0.0;              ///< internal step of the returned solution
  double richardson_change = 0.0; ///< relative change of C(T) against the step twice as large
};

/**
 * @brief Integrates the moment equation from C(0) = C0 onto `grid`.
 *
 * Midpoint RK2 for C fused with trapezoidal accumulation of int C. The step
 * starts at options.initial_step and is halved until C(T) moves by less than
 * rel_tol; the finer solution is returned. The grid must be non-empty,
 * non-negative and strictly increasing; samples between internal steps are
 * interpolated linearly. Throws NoConvergence if max_halvings is exhausted.
 */
MomentSolution solve_mean_concentration(const KernelSpec& kernel, const Config& config,
                                        std::span<const double> grid,
                                        const SolverOptions& options = {});

/// Default output grid: 200 log-spaced points in [dt, t_final].
std::vector<double> default_output_grid(const Config& config);

/// Adapter for the least-squares width search.
kernels::MeanConcentrationSolver make_moment_solver(const Config& config,
                                                    SolverOptions options = {});

/// Diagnostics from the bound on the Dirac/Gaussian mean-concentration gap.
struct ErrorBound {
  double g_bound = 0.0;          ///< right side of the |g_delta - g_G| bound at t
  double cbar_bound = 0.0;       ///< C1 Delta (1 + k C0 T), or C3 (1 + k C0 T)^(-d/2) when Delta = 0
  double cbar_bound_exact = 0.0; ///< term-by-term integral of g_bound, never above the constant form
  bool premise_holds = false;    ///< 8 pi D > k C0
  double validity_start = 0.0;   ///< 1 / (8 pi D - k C0) when the premise holds, else 0
};

/// Delta = 1/N_G - 1/N_delta
double count_delta(const Config& config);

/**
 * @brief Evaluates the bound on |C_delta - C_G| up to stop time t.
 *
 * `delta` is 1/N_G - 1/N_delta and `half_width` the Gaussian half-width.
 */
ErrorBound error_bound(double t, double delta, const Config& config, double half_width);

}  // namespace krpt::moments

#endif  // KRPT_MOMENTS_MOMENTS_HPP
