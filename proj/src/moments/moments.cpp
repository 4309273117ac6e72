#include "krpt/moments/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "krpt/core/errors.hpp"

namespace krpt::moments {

namespace {

constexpr double kPi = std::numbers::pi;

double inverse_power(double base, int dim) {
  return dim == 1 ? 1.0 / std::sqrt(base) : std::pow(base, -0.5 * dim);
}

// psi_p(t) = amplitude * [ (scale * (offset + t))^(-d/2) - 1/Omega ]
struct Psi {
  double amplitude = 0.0;
  double scale = 0.0;
  double offset = 0.0;
  double inv_omega = 0.0;
  int dim = 1;
  bool singular_at_zero = false;

  static Psi make(const KernelSpec& kernel, const Config& config) {
    Psi p;
    p.inv_omega = 1.0 / config.omega();
    p.dim = config.dim();
    switch (kernel.kind()) {
      case KernelKind::Dirac:
        p.amplitude = 0.5 * config.c0() * config.mass_delta();
        p.scale = 8.0 * kPi * config.diffusion();
        p.singular_at_zero = true;
        break;
      case KernelKind::FixedGaussian: {
        const double l = kernel.width();
        p.amplitude = 0.5 * config.c0() * config.mass_gaussian();
        // 4 pi (l^2 + 2 D t) = 8 pi D (l^2 / (2 D) + t); written directly to allow D = 0.
        p.scale = 4.0 * kPi;
        p.offset = l * l;
        break;
      }
      case KernelKind::VariableGaussian:
        throw Error(ErrorCode::UnsupportedKernel,
                    "no moment equation exists for the variable-width kernel");
    }
    if (p.singular_at_zero && config.diffusion() == 0.0) {
      throw Error(ErrorCode::ZeroDiffusion, "Dirac autocovariance is undefined without diffusion");
    }
    return p;
  }

  double operator()(double t, double diffusion) const {
    const double base = singular_at_zero ? scale * t : scale * (offset + 2.0 * diffusion * t);
    return amplitude * (inverse_power(base, dim) - inv_omega);
  }
};

struct RunResult {
  std::vector<double> mean;
  std::vector<double> integral;
  double final_mean = 0.0;
};

// One fixed-step integration over [0, grid.back()] sampled onto grid.
RunResult integrate(const Psi& psi, const Config& config, std::span<const double> grid,
                    std::size_t n_steps) {
  const double k = config.rate_constant();
  const double diffusion = config.diffusion();
  const double t_end = grid.back();
  const double h = t_end / static_cast<double>(n_steps);

  auto rhs = [&](double t, double c, double integral) {
    const double g = t == 0.0 ? 0.0 : psi(t, diffusion) * std::expm1(-4.0 * k * integral);
    return -k * (c * c + g);
  };

  RunResult out;
  out.mean.resize(grid.size());
  out.integral.resize(grid.size());
  std::size_t next = 0;
  double c = config.c0();
  double integral = 0.0;
  while (next < grid.size() && grid[next] == 0.0) {
    out.mean[next] = c;
    out.integral[next] = 0.0;
    ++next;
  }
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * h;
    const double t_next = i + 1 == n_steps ? t_end : static_cast<double>(i + 1) * h;
    const double k1 = rhs(t, c, integral);
    const double c_mid = c + 0.5 * h * k1;
    const double i_mid = integral + 0.5 * h * c;
    const double k2 = rhs(t + 0.5 * h, c_mid, i_mid);
    const double c_new = c + h * k2;
    const double i_new = integral + 0.5 * h * (c + c_new);
    while (next < grid.size() && grid[next] <= t_next) {
      const double w = (grid[next] - t) / (t_next - t);
      out.mean[next] = c + w * (c_new - c);
      out.integral[next] = integral + w * (i_new - integral);
      ++next;
    }
    c = c_new;
    integral = i_new;
  }
  out.final_mean = c;
  return out;
}

}  // namespace

double well_mixed(double t, double c0, double k) { return c0 / (1.0 + c0 * k * t); }

double psi(double t, const KernelSpec& kernel, const Config& config) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "psi needs t >= 0");
  const Psi p = Psi::make(kernel, config);
  if (p.singular_at_zero && t == 0.0) {
    throw Error(ErrorCode::SingularAtZero, "Dirac psi diverges at t = 0");
  }
  return p(t, config.diffusion());
}

double cross_covariance(double t, const KernelSpec& kernel, const Config& config,
                        double integral_of_mean) {
  if (t == 0.0) return 0.0;
  return psi(t, kernel, config) *
         std::expm1(-4.0 * config.rate_constant() * integral_of_mean);
}

MomentSolution solve_mean_concentration(const KernelSpec& kernel, const Config& config,
                                        std::span<const double> grid,
                                        const SolverOptions& options) {
  if (grid.empty()) throw Error(ErrorCode::EmptyTimeGrid, "moment solver needs output times");
  require_time_grid(grid);
  const Psi psi_fn = Psi::make(kernel, config);

  MomentSolution sol;
  sol.kernel = kernel;
  sol.trace.times.assign(grid.begin(), grid.end());
  sol.trace.stddev.assign(grid.size(), 0.0);
  const double t_end = grid.back();
  const double k = config.rate_constant();

  if (t_end == 0.0 || k == 0.0) {
    sol.trace.mean.assign(grid.size(), config.c0());
    sol.integral.resize(grid.size());
    std::transform(grid.begin(), grid.end(), sol.integral.begin(),
                   [&](double t) { return config.c0() * t; });
    sol.g.assign(grid.size(), 0.0);
    return sol;
  }

  double h = options.initial_step > 0.0 ? options.initial_step : 1e-3 / (k * config.c0());
  h = std::min(h, t_end / 100.0);
  auto steps_for = [&](double step) {
    return static_cast<std::size_t>(std::ceil(t_end / step * (1.0 - 1e-12)));
  };

  std::size_t n = steps_for(h);
  RunResult coarse = integrate(psi_fn, config, grid, n);
  double change = 0.0;
  for (int halving = 0;; ++halving) {
    RunResult fine = integrate(psi_fn, config, grid, 2 * n);
    change = std::abs(fine.final_mean - coarse.final_mean) / std::abs(fine.final_mean);
    if (change < options.rel_tol) {
      sol.trace.mean = std::move(fine.mean);
      sol.integral = std::move(fine.integral);
      sol.step = t_end / static_cast<double>(2 * n);
      sol.richardson_change = change;
      break;
    }
    if (halving >= options.max_halvings) {
      std::ostringstream msg;
      msg << "moment solver did not converge: relative change " << change << " at step "
          << t_end / static_cast<double>(2 * n);
      throw Error(ErrorCode::NoConvergence, msg.str());
    }
    coarse = std::move(fine);
    n *= 2;
  }

  sol.g.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sol.g[i] = grid[i] == 0.0 ? 0.0
                              : psi_fn(grid[i], config.diffusion()) *
                                    std::expm1(-4.0 * k * sol.integral[i]);
  }
  return sol;
}

std::vector<double> default_output_grid(const Config& config) {
  return log_time_grid(config.dt(), config.t_final(), 200);
}

kernels::MeanConcentrationSolver make_moment_solver(const Config& config, SolverOptions options) {
  return [config, options](const KernelSpec& kernel, std::span<const double> times) {
    return solve_mean_concentration(kernel, config, times, options).trace.mean;
  };
}

double count_delta(const Config& config) {
  return 1.0 / static_cast<double>(config.n_gaussian()) -
         1.0 / static_cast<double>(config.n_delta());
}

ErrorBound error_bound(double t, double delta, const Config& config, double half_width) {
  if (t < 0.0) throw Error(ErrorCode::InvalidArgument, "error bound needs t >= 0");
  const double c0 = config.c0();
  const double k = config.rate_constant();
  const double omega = config.omega();
  const double d = static_cast<double>(config.dim());
  const double u = 1.0 + k * c0 * t;

  // Terms of the g bound as coefficient * (1 + k C0 t)^power.
  const double coef[4] = {0.5 * c0 * c0 * delta, c0 * c0 * delta / (2.0 * omega),
                          kPi * d * c0 * half_width * half_width * config.mass_gaussian(),
                          c0 * config.mass_delta() / (2.0 * omega)};
  const double power[4] = {0.0, -0.5 * d, -1.0 - 0.5 * d, -4.0};

  ErrorBound b;
  for (int i = 0; i < 4; ++i) b.g_bound += coef[i] * std::pow(u, power[i]);

  // k / u^2 * int_0^t coef * (1 + k C0 s)^(power + 2) ds, integrated exactly.
  auto integrated = [&](int i) {
    if (k == 0.0 || t == 0.0) return 0.0;
    const double p = power[i] + 2.0;
    const double antiderivative =
        p == -1.0 ? std::log(u) : (std::pow(u, p + 1.0) - 1.0) / (p + 1.0);
    return coef[i] * antiderivative / (c0 * u * u);
  };
  for (int i = 0; i < 4; ++i) b.cbar_bound_exact += integrated(i);

  if (delta != 0.0) {
    b.cbar_bound = c0 / 6.0 * delta * u;
  } else if (config.dim() < 4) {
    const double c3 = kPi * d * half_width * half_width * config.mass_gaussian() / (2.0 - 0.5 * d);
    b.cbar_bound = c3 * std::pow(u, -0.5 * d);
  } else {
    b.cbar_bound = integrated(2);
  }

  const double gap = 8.0 * kPi * config.diffusion() - k * c0;
  b.premise_holds = gap > 0.0;
  b.validity_start = b.premise_holds ? 1.0 / gap : 0.0;
  return b;
}

}  // namespace krpt::moments
