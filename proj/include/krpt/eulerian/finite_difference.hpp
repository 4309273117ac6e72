#ifndef KRPT_EULERIAN_FINITE_DIFFERENCE_HPP
#define KRPT_EULERIAN_FINITE_DIFFERENCE_HPP

/**
 * @file finite_difference.hpp
 * @brief Semi-implicit finite-difference reference solver for A + B -> 0 in d = 1.
 *
 * Each step solves, per species,
 *
 *   (I - D dt L) C(t) = C(t - dt) - k dt C_A(t - dt) C_B(t - dt)
 *
 * with L the central second difference. Diffusion is backward Euler; the
 * reaction uses the concentrations of the previous step, so no nonlinear
 * solve is needed. L wraps around on a periodic domain and has zero-flux
 * rows at the walls on a reflecting one.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/trace.hpp"

namespace krpt::eulerian {

/// Cell-averaged concentrations of both species.
struct GridField {
  double dx = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  double time = 0.0;
  Boundary boundary = Boundary::Reflecting;

  std::size_t cells() const noexcept { return a.size(); }
  /// sum(C) dx / Omega
  double mean_a() const noexcept;
  double mean_b() const noexcept;
};

/**
 * @brief Default perturbation amplitude min(sqrt(3 C0 m_delta / dx), C0).
 *
 * The first term gives each cell the variance C0 m_delta / dx of a binned
 * Dirac particle field; the cap keeps every initial cell non-negative.
 */
double default_amplitude(const Config& config);

/**
 * @brief N_delta cells of width Omega / N_delta, each set to C0 + U(-a, a) independently.
 *
 * Throws NegativeConcentrationRisk when a > C0, InvalidArgument when a < 0
 * and UnsupportedDimension unless d = 1.
 */
GridField fd_initialize(const Config& config, double amplitude, std::uint64_t seed);

/// Deterministic start: cell i of n takes profile(x_i) at its centre x_i.
GridField fd_profile(const Config& config, std::size_t cells,
                     const std::function<double(double)>& profile_a,
                     const std::function<double(double)>& profile_b);

/// Factorized diffusion operator for one grid, reused across steps.
class FdSolver {
 public:
  FdSolver(const Config& config, std::size_t cells, double dx, Boundary boundary);

  /// Advances one step; throws NegativeConcentration when a cell ends below -1e-10.
  void step(GridField& field);

 private:
  void eliminate(std::vector<double>& rhs) const;
  void solve(std::vector<double>& rhs) const;

  double kdt_ = 0.0;
  double dt_ = 0.0;
  double r_ = 0.0;  // D dt / dx^2
  bool periodic_ = false;
  // Thomas elimination of the (modified) tridiagonal matrix.
  std::vector<double> upper_;
  std::vector<double> inv_pivot_;
  // Sherman-Morrison correction for the periodic corners.
  std::vector<double> z_;
  double gamma_ = 0.0;
  double corner_ = 0.0;
  double z_factor_ = 0.0;
  std::vector<double> reacted_;
};

/// One step with a temporary solver.
void fd_step(GridField& field, const Config& config);

/**
 * @brief Steps from `initial` until the last grid time, recording mean_a().
 *
 * Times snap to whole steps as in the particle engine; EmptyTrace when none
 * falls within the run.
 */
ConcentrationTrace fd_solve(const Config& config, GridField initial,
                            std::span<const double> output_grid);

/// Perturbed start from fd_initialize(config, amplitude, seed).
ConcentrationTrace fd_solve(const Config& config, double amplitude, std::uint64_t seed,
                            std::span<const double> output_grid);

struct FdEnsembleResult {
  ConcentrationTrace trace;
  std::vector<ConcentrationTrace> realizations;
};

/// n_realizations perturbed solves with seeds seed ^ r, reduced like the particle ensemble.
FdEnsembleResult fd_ensemble(const Config& config, double amplitude,
                             std::span<const double> output_grid);

}  // namespace krpt::eulerian

#endif  // KRPT_EULERIAN_FINITE_DIFFERENCE_HPP
