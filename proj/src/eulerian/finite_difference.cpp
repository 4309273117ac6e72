#include "krpt/eulerian/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "krpt/core/errors.hpp"
#include "krpt/core/parallel.hpp"
#include "krpt/core/rng.hpp"

namespace krpt::eulerian {

namespace {

constexpr double kNegativeTolerance = 1e-10;

void require_line(const Config& config) {
  if (config.dim() != 1) {
    throw Error(ErrorCode::UnsupportedDimension, "the finite-difference solver is one-dimensional");
  }
}

double cell_mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

double GridField::mean_a() const noexcept { return cell_mean(a); }
double GridField::mean_b() const noexcept { return cell_mean(b); }

double default_amplitude(const Config& config) {
  const double dx = config.side_length() / static_cast<double>(config.n_delta());
  return std::min(std::sqrt(3.0 * config.c0() * config.mass_delta() / dx), config.c0());
}

GridField fd_initialize(const Config& config, double amplitude, std::uint64_t seed) {
  require_line(config);
  if (!(amplitude >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "perturbation amplitude must be >= 0");
  }
  if (amplitude > config.c0()) {
    std::ostringstream msg;
    msg << "amplitude " << amplitude << " exceeds C0 = " << config.c0()
        << "; cells could start negative";
    throw Error(ErrorCode::NegativeConcentrationRisk, msg.str());
  }
  const std::size_t n = config.n_delta();
  GridField field;
  field.dx = config.side_length() / static_cast<double>(n);
  field.boundary = config.boundary();
  field.a.assign(n, config.c0());
  field.b.assign(n, config.c0());
  if (amplitude > 0.0) {
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> noise(-amplitude, amplitude);
    for (double& c : field.a) c += noise(rng);
    for (double& c : field.b) c += noise(rng);
  }
  return field;
}

GridField fd_profile(const Config& config, std::size_t cells,
                     const std::function<double(double)>& profile_a,
                     const std::function<double(double)>& profile_b) {
  require_line(config);
  if (cells < 3) throw Error(ErrorCode::InvalidArgument, "a grid needs at least 3 cells");
  GridField field;
  field.dx = config.side_length() / static_cast<double>(cells);
  field.boundary = config.boundary();
  field.a.resize(cells);
  field.b.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * field.dx;
    field.a[i] = profile_a(x);
    field.b[i] = profile_b(x);
    if (!(field.a[i] >= 0.0) || !(field.b[i] >= 0.0) || !std::isfinite(field.a[i]) ||
        !std::isfinite(field.b[i])) {
      throw Error(ErrorCode::InvalidArgument, "initial profiles must be finite and >= 0");
    }
  }
  return field;
}

FdSolver::FdSolver(const Config& config, std::size_t cells, double dx, Boundary boundary)
    : kdt_(config.rate_constant() * config.dt()),
      dt_(config.dt()),
      r_(config.diffusion() * config.dt() / (dx * dx)),
      periodic_(boundary == Boundary::Periodic) {
  if (cells < 3) throw Error(ErrorCode::InvalidArgument, "a grid needs at least 3 cells");
  const std::size_t n = cells;
  std::vector<double> diag(n, 1.0 + 2.0 * r_);
  const double off = -r_;
  if (periodic_) {
    // A = A' + u v^T with u = (gamma, 0, ..., 0, off), v = (1, 0, ..., 0, off / gamma).
    gamma_ = -diag[0];
    corner_ = off / gamma_;
    diag[0] -= gamma_;
    diag[n - 1] -= off * off / gamma_;
  } else {
    diag[0] = 1.0 + r_;
    diag[n - 1] = 1.0 + r_;
  }
  upper_.resize(n);
  inv_pivot_.resize(n);
  double previous = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = diag[i] - (i == 0 ? 0.0 : off * previous);
    inv_pivot_[i] = 1.0 / pivot;
    previous = i + 1 < n ? off * inv_pivot_[i] : 0.0;
    upper_[i] = previous;
  }
  if (periodic_) {
    z_.assign(n, 0.0);
    z_[0] = gamma_;
    z_[n - 1] = off;
    eliminate(z_);
    z_factor_ = 1.0 / (1.0 + z_[0] + corner_ * z_[n - 1]);
  }
}

void FdSolver::eliminate(std::vector<double>& x) const {
  const std::size_t n = x.size();
  const double off = -r_;
  x[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = (x[i] - off * x[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= upper_[i] * x[i + 1];
}

void FdSolver::solve(std::vector<double>& x) const {
  const std::size_t n = x.size();
  eliminate(x);
  if (periodic_) {
    const double scale = (x[0] + corner_ * x[n - 1]) * z_factor_;
    for (std::size_t i = 0; i < n; ++i) x[i] -= scale * z_[i];
  }
}

void FdSolver::step(GridField& field) {
  const std::size_t n = field.cells();
  reacted_.resize(n);
  for (std::size_t i = 0; i < n; ++i) reacted_[i] = kdt_ * field.a[i] * field.b[i];
  for (std::vector<double>* values : {&field.a, &field.b}) {
    std::vector<double>& c = *values;
    for (std::size_t i = 0; i < n; ++i) c[i] -= reacted_[i];
    solve(c);
    for (double& v : c) {
      if (v >= 0.0) continue;
      if (v < -kNegativeTolerance) {
        std::ostringstream msg;
        msg << "cell concentration " << v << " at t = " << field.time + dt_
            << "; reduce the time step";
        throw Error(ErrorCode::NegativeConcentration, msg.str());
      }
      v = 0.0;
    }
  }
  field.time += dt_;
}

void fd_step(GridField& field, const Config& config) {
  FdSolver solver(config, field.cells(), field.dx, field.boundary);
  solver.step(field);
}

ConcentrationTrace fd_solve(const Config& config, GridField field,
                            std::span<const double> output_grid) {
  const std::vector<std::size_t> record = snap_to_steps(output_grid, config.dt(), config.steps());
  if (record.empty()) {
    throw Error(ErrorCode::EmptyTrace, "no output time falls within (0, t_final]");
  }
  FdSolver solver(config, field.cells(), field.dx, field.boundary);
  ConcentrationTrace trace;
  std::size_t next = 0;
  for (std::size_t step = 1; step <= record.back(); ++step) {
    solver.step(field);
    if (record[next] == step) {
      trace.times.push_back(static_cast<double>(step) * config.dt());
      trace.mean.push_back(field.mean_a());
      ++next;
    }
  }
  trace.stddev.assign(trace.times.size(), 0.0);
  return trace;
}

ConcentrationTrace fd_solve(const Config& config, double amplitude, std::uint64_t seed,
                            std::span<const double> output_grid) {
  return fd_solve(config, fd_initialize(config, amplitude, seed), output_grid);
}

FdEnsembleResult fd_ensemble(const Config& config, double amplitude,
                             std::span<const double> output_grid) {
  FdEnsembleResult result;
  result.realizations.resize(config.n_realizations());
  parallel_for(result.realizations.size(), [&](std::size_t r) {
    result.realizations[r] =
        fd_solve(config, amplitude, realization_seed(config.seed(), r), output_grid);
  });
  result.trace = reduce_ensemble(result.realizations);
  return result;
}

}  // namespace krpt::eulerian
