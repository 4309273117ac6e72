#include "krpt/kernels/width.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "krpt/core/diagnostics.hpp"
#include "krpt/core/errors.hpp"
#include "krpt/core/trace.hpp"

namespace krpt::kernels {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnboundedLimit = 1e12;

// Round-off in the bracket of the radicand is bounded by a few ulps of 2 D t*.
double radicand_tolerance(double t_star, const WidthParams& p) {
  return 64.0 * std::numeric_limits<double>::epsilon() * 2.0 * p.diffusion * t_star;
}

}  // namespace

WidthParams WidthParams::from(const Config& config) {
  return WidthParams{config.n_gaussian(), config.n_delta(), config.diffusion(), config.omega(),
                     config.dim()};
}

double matching_radicand(double t_star, const WidthParams& p) {
  const double d = static_cast<double>(p.dim);
  const double spread = 8.0 * kPi * p.diffusion * t_star;
  const double diffusive = p.dim == 1 ? 1.0 / std::sqrt(spread) : std::pow(spread, -0.5 * d);
  const double inv_omega = 1.0 / p.omega;
  const double bracket = p.count_ratio() * (diffusive - inv_omega) + inv_omega;
  const double powered = p.dim == 1 ? 1.0 / (bracket * bracket) : std::pow(bracket, -2.0 / d);
  return powered / (4.0 * kPi) - 2.0 * p.diffusion * t_star;
}

double width_at_time(double t_star, const WidthParams& p) {
  if (!(t_star > 0.0)) throw Error(ErrorCode::InvalidArgument, "matching time must be > 0");
  if (p.n_gaussian == 0 || p.n_gaussian > p.n_delta) {
    throw Error(ErrorCode::InvalidArgument, "width matching needs 1 <= N_G <= N_delta");
  }
  // Equal counts reduce the bracket to (8 pi D t*)^(-d/2) exactly: the Dirac kernel.
  if (p.n_gaussian == p.n_delta) return 0.0;

  const double r = matching_radicand(t_star, p);
  if (std::abs(r) <= radicand_tolerance(t_star, p)) return 0.0;
  if (r < 0.0) {
    const MatchingTime tau = max_matching_time(p, 0.5 * t_star);
    throw InfeasibleMatchTimeError(t_star, tau.value);
  }
  return std::sqrt(r);
}

MatchingTime max_matching_time(const WidthParams& p, double t_lo) {
  if (!(t_lo > 0.0)) throw Error(ErrorCode::InvalidArgument, "bracket start must be > 0");
  if (p.n_gaussian >= p.n_delta || p.diffusion == 0.0) {
    return {std::numeric_limits<double>::infinity(), true};
  }
  auto feasible = [&](double t) {
    return matching_radicand(t, p) >= -radicand_tolerance(t, p);
  };

  double lo = t_lo;
  double hi = 0.0;
  if (!feasible(lo)) {
    hi = lo;
    for (int i = 0; i < 1100 && !feasible(lo); ++i) {
      hi = lo;
      lo *= 0.5;
    }
    if (!feasible(lo)) return {0.0, false};
  } else {
    hi = 2.0 * lo;
    while (feasible(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > kUnboundedLimit) return {std::numeric_limits<double>::infinity(), true};
    }
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return {lo, false};
}

std::vector<double> default_matching_times(const Config& config) {
  const double first = std::min(1e-2, config.t_final());
  return log_time_grid(first, config.t_final(), 100);
}

double least_squares_objective(std::span<const double> reference,
                               std::span<const double> candidate) {
  if (reference.size() != candidate.size()) {
    throw Error(ErrorCode::InvalidArgument, "objective needs equally sized series");
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double e = reference[i] - candidate[i];
    ss += e * e;
  }
  return std::sqrt(ss);
}

LeastSquaresResult least_squares_width(const Config& config, const LeastSquaresOptions& options,
                                       const MeanConcentrationSolver& solver) {
  if (!(options.upper_fraction > 0.0 && options.upper_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "upper_fraction must lie in (0, 1]");
  }
  const std::vector<double> times = options.times.value_or(default_matching_times(config));
  if (times.empty()) throw Error(ErrorCode::EmptyTimeGrid, "least-squares time set T* is empty");
  require_time_grid(times);

  const std::vector<double> reference = solver(KernelSpec::dirac(), times);

  LeastSquaresResult best;
  best.objective = std::numeric_limits<double>::infinity();
  auto objective = [&](double width) {
    const auto candidate = solver(KernelSpec::fixed_gaussian(width), times);
    const double value = least_squares_objective(reference, candidate);
    ++best.evaluations;
    if (value < best.objective || (value == best.objective && width < best.width)) {
      best.objective = value;
      best.width = width;
    }
    return value;
  };

  // Golden-section over [0, upper]; probes stay strictly inside, so l_G > 0.
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  const double tolerance = options.tolerance_fraction * config.omega();
  double a = 0.0;
  double b = options.upper_fraction * config.omega();
  double c = b - golden * (b - a);
  double d = a + golden * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - golden * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + golden * (b - a);
      fd = objective(d);
    }
  }

  best.exceeds_domain_rule = best.width / config.omega() > kDomainEffectRatio;
  if (best.exceeds_domain_rule) {
    std::ostringstream msg;
    msg << "least-squares half-width " << best.width << " exceeds " << kDomainEffectRatio
        << " of the domain; expect domain effects";
    diag::warn(msg.str());
  }
  return best;
}

VariableWidth::VariableWidth(const Config& config)
    : params_(WidthParams::from(config)),
      half_step_(0.5 * config.dt()),
      tau_star_(max_matching_time(params_, 0.5 * config.dt())) {}

double VariableWidth::evaluate(double t, bool* clamped) const {
  double at = std::max(t, half_step_);
  const bool past = !tau_star_.unbounded && at > tau_star_.value;
  if (past) at = tau_star_.value;
  if (clamped) *clamped = past;
  return width_at_time(at, params_);
}

double variable_width(double t, const Config& config) {
  bool clamped = false;
  const VariableWidth width(config);
  const double value = width.evaluate(t, &clamped);
  if (clamped) {
    std::ostringstream msg;
    msg << "variable half-width clamped at tau* = " << width.tau_star().value << " (t = " << t
        << ")";
    diag::warn(msg.str());
  }
  return value;
}

KernelSpec resolve_kernel(const Config& config, const WidthSelection& selection,
                          const MeanConcentrationSolver& solver) {
  KernelSpec kernel = KernelSpec::variable_gaussian();
  if (const auto* s = std::get_if<SpecificTime>(&selection)) {
    kernel = KernelSpec::fixed_gaussian(width_at_time(s->t_star, WidthParams::from(config)));
  } else if (const auto* ls = std::get_if<LeastSquares>(&selection)) {
    kernel = KernelSpec::fixed_gaussian(least_squares_width(config, ls->options, solver).width);
  }
  return kernel;
}

}  // namespace krpt::kernels
