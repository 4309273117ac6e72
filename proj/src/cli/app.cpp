#include "krpt/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "krpt/cli/config_file.hpp"
#include "krpt/cli/csv.hpp"
#include "krpt/cli/recipes.hpp"
#include "krpt/core/diagnostics.hpp"
#include "krpt/core/errors.hpp"
#include "krpt/engine/run.hpp"
#include "krpt/engine/statistics.hpp"
#include "krpt/eulerian/finite_difference.hpp"
#include "krpt/kernels/width.hpp"
#include "krpt/moments/moments.hpp"

namespace krpt::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options shared by the subcommands.
struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string recipe;
  std::string kernel;
  std::string match;
  double t_star = 0.0;
  double width = -1.0;
  std::size_t points = 200;
  std::vector<double> times;
  bool cell_list = false;
  bool summed = false;
  int noise_substeps = 1;
  bool with_eulerian = false;
  std::string out;
  std::string out_dir;
  std::string strategy = "least-squares";
  double threshold_fraction = 0.02;
};

void add_config_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-c,--config", o.config_path, "key = value configuration file");
  cmd->add_option("-s,--set", o.overrides, "override a config key, e.g. --set dt=0.05");
  cmd->add_option("-r,--recipe", o.recipe, "named experiment preset");
}

void add_kernel_options(CLI::App* cmd, Options& o) {
  cmd->add_option("-k,--kernel", o.kernel, "dirac, gaussian or variable")
      ->check(CLI::IsMember({"dirac", "gaussian", "variable"}));
  cmd->add_option("-m,--match", o.match, "width choice for --kernel gaussian")
      ->check(CLI::IsMember({"t-star", "least-squares", "fixed"}));
  cmd->add_option("--t-star", o.t_star, "matching time for --match t-star");
  cmd->add_option("--width", o.width, "half-width for --match fixed");
}

void add_grid_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--points", o.points, "log-spaced output times in [dt, t_final]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--times", o.times, "explicit output times")->delimiter(',');
}

void add_engine_options(CLI::App* cmd, Options& o) {
  cmd->add_flag("--cell-list", o.cell_list, "restrict pair search to the kernel cutoff");
  cmd->add_flag("--summed", o.summed, "use start-of-step masses in every decrement");
  cmd->add_option("--noise-substeps", o.noise_substeps, "Brownian increments summed per step")
      ->check(CLI::PositiveNumber);
}

std::optional<ExperimentRecipe> recipe_of(const Options& o) {
  if (o.recipe.empty()) return std::nullopt;
  auto recipe = find_recipe(o.recipe);
  if (!recipe) {
    std::string names;
    for (const auto& r : recipes()) names += (names.empty() ? "" : ", ") + r.name;
    throw UsageError("unknown recipe '" + o.recipe + "' (known: " + names + ")");
  }
  return recipe;
}

SimConfig raw_config(const Options& o) {
  const auto recipe = recipe_of(o);
  SimConfig raw = recipe ? recipe->base : SimConfig{};
  if (!o.config_path.empty()) raw = load_config(o.config_path, raw);
  for (const auto& assignment : o.overrides) apply_override(raw, assignment);
  return raw;
}

KernelChoice kernel_choice(const Options& o, KernelChoice fallback) {
  using Mode = KernelChoice::Mode;
  if (o.kernel.empty()) {
    if (!o.match.empty()) throw UsageError("--match needs --kernel gaussian");
    return fallback;
  }
  if (o.kernel == "dirac") return {Mode::Dirac, 0.0};
  if (o.kernel == "variable") return {Mode::Variable, 0.0};
  const std::string match = o.match.empty() ? "least-squares" : o.match;
  if (match == "t-star") {
    if (!(o.t_star > 0.0)) throw UsageError("--match t-star needs --t-star > 0");
    return {Mode::SpecificTime, o.t_star};
  }
  if (match == "fixed") {
    if (!(o.width >= 0.0)) throw UsageError("--match fixed needs --width >= 0");
    return {Mode::Fixed, o.width};
  }
  return {Mode::LeastSquares, 0.0};
}

std::vector<double> output_grid(const Options& o, const Config& config) {
  if (!o.times.empty()) return o.times;
  return log_time_grid(config.dt(), config.t_final(), o.points);
}

engine::RunOptions run_options(const Options& o) {
  engine::RunOptions run;
  run.reaction.search = o.cell_list ? engine::PairSearch::CellList : engine::PairSearch::Exact;
  run.reaction.update = o.summed ? engine::MassUpdate::Summed : engine::MassUpdate::Sequential;
  run.noise_substeps = o.noise_substeps;
  return run;
}

std::vector<std::string> header(const std::string& command, const Config& config,
                                const Options& o) {
  std::vector<std::string> lines{"krpt " + command};
  for (auto& line : format_config(config.params())) lines.push_back(std::move(line));
  lines.push_back("damkohler_delta = " + format_number(damkohler(config, config.n_delta())));
  lines.push_back("damkohler_gaussian = " + format_number(damkohler(config, config.n_gaussian())));
  lines.push_back(std::string("pair_search = ") + (o.cell_list ? "cell-list" : "exact"));
  lines.push_back(std::string("mass_update = ") + (o.summed ? "summed" : "sequential"));
  lines.push_back("noise_substeps = " + std::to_string(o.noise_substeps));
  return lines;
}

// The least-squares search issues its own warning.
void warn_domain_rule(const KernelSpec& kernel, const KernelChoice& choice, const Config& config) {
  const double ratio = kernel.width() / config.omega();
  if (choice.mode != KernelChoice::Mode::LeastSquares && ratio > kernels::kDomainEffectRatio) {
    std::ostringstream msg;
    msg << "half-width / Omega = " << ratio << " exceeds " << kernels::kDomainEffectRatio
        << "; expect domain effects";
    diag::warn(msg.str());
  }
}

void report_kernel(const KernelSpec& kernel, const KernelChoice& choice, const Config& config,
                   std::ostream& err) {
  if (kernel.kind() == KernelKind::VariableGaussian) {
    err << "half_width = variable\n";
    return;
  }
  err << "half_width = " << format_number(kernel.width()) << '\n';
  warn_domain_rule(kernel, choice, config);
}

std::vector<double> width_over_omega(const KernelSpec& kernel, const Config& config,
                                     const std::vector<double>& times) {
  std::vector<double> out(times.size(), kernel.width() / config.omega());
  if (kernel.kind() == KernelKind::VariableGaussian) {
    const kernels::VariableWidth width(config);
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = width(times[i]) / config.omega();
  }
  return out;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const Config config = validate_config(raw_config(o));
  const auto recipe = recipe_of(o);
  const KernelChoice choice =
      kernel_choice(o, recipe ? recipe->kernel : KernelChoice{KernelChoice::Mode::Dirac, 0.0});
  const KernelSpec kernel = resolve(config, choice);
  report_kernel(kernel, choice, config, err);
  const auto grid = output_grid(o, config);
  const engine::EnsembleResult result = engine::run_ensemble(config, kernel, grid, run_options(o));

  Table table;
  table.comments = header("simulate", config, o);
  table.comments.push_back("kernel = " + kernel.describe());
  table.comments.push_back("width_choice = " + choice.describe());
  table.add_column("time", result.trace.times);
  table.add_column("cbar_mean", result.trace.mean);
  table.add_column("cbar_std", result.trace.stddev);
  write_csv(o.out, table, out);
  return kExitOk;
}

int cmd_moments(const Options& o, std::ostream& out, std::ostream& err) {
  const Config config = validate_config(raw_config(o));
  const KernelChoice choice = kernel_choice(o, {KernelChoice::Mode::LeastSquares, 0.0});
  const KernelSpec gaussian = resolve(config, choice);
  if (gaussian.kind() == KernelKind::VariableGaussian) {
    throw Error(ErrorCode::UnsupportedKernel, "the moment equation needs a fixed kernel");
  }
  report_kernel(gaussian, choice, config, err);
  const auto grid = output_grid(o, config);
  const auto dirac = moments::solve_mean_concentration(KernelSpec::dirac(), config, grid);
  const auto fitted = moments::solve_mean_concentration(gaussian, config, grid);
  const double delta = moments::count_delta(config);

  std::vector<double> mixed(grid.size());
  std::vector<double> gap(grid.size());
  std::vector<double> bound(grid.size());
  moments::ErrorBound last;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    mixed[i] = moments::well_mixed(t, config.c0(), config.rate_constant());
    gap[i] = std::abs(dirac.trace.mean[i] - fitted.trace.mean[i]);
    last = moments::error_bound(t, delta, config, gaussian.width());
    bound[i] = last.cbar_bound_exact;
    for (const auto* solution : {&dirac, &fitted}) {
      const double c = solution->trace.mean[i];
      const bool reacting = config.rate_constant() > 0.0 && t > 0.0;
      if (reacting ? !(c > mixed[i]) : c < mixed[i]) {
        std::ostringstream msg;
        msg << "moment solution " << c << " at t = " << t << " is not above the well-mixed value "
            << mixed[i];
        throw SolverFailure(msg.str());
      }
    }
  }

  Table table;
  table.comments = header("moments", config, o);
  table.comments.push_back("kernel = " + gaussian.describe());
  table.comments.push_back("width_choice = " + choice.describe());
  table.comments.push_back("count_delta = " + format_number(delta));
  table.comments.push_back(std::string("bound_premise_8piD_gt_kC0 = ") +
                           (last.premise_holds ? "true" : "false"));
  table.comments.push_back("bound_validity_start = " + format_number(last.validity_start));
  table.add_column("time", grid);
  table.add_column("cbar_dirac", dirac.trace.mean);
  table.add_column("cbar_gaussian", fitted.trace.mean);
  table.add_column("well_mixed", mixed);
  table.add_column("g_dirac", dirac.g);
  table.add_column("g_gaussian", fitted.g);
  table.add_column("abs_difference", gap);
  table.add_column("difference_bound", bound);
  write_csv(o.out, table, out);
  return kExitOk;
}

int cmd_match_width(const Options& o, std::ostream& out) {
  const Config config = validate_config(raw_config(o));
  const auto params = kernels::WidthParams::from(config);
  const auto tau = kernels::max_matching_time(params, 0.5 * config.dt());
  auto emit = [&](const std::string& key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  emit("strategy", o.strategy);
  emit("n_delta", std::to_string(config.n_delta()));
  emit("n_gaussian", std::to_string(config.n_gaussian()));
  emit("tau_star", tau.unbounded ? "inf" : format_number(tau.value));
  if (o.strategy == "max-time") return kExitOk;

  KernelChoice choice{KernelChoice::Mode::LeastSquares, 0.0};
  if (o.strategy == "t-star") {
    if (!(o.t_star > 0.0)) throw UsageError("--strategy t-star needs --t-star > 0");
    choice = {KernelChoice::Mode::SpecificTime, o.t_star};
  }
  const KernelSpec kernel = resolve(config, choice);
  warn_domain_rule(kernel, choice, config);
  emit("half_width", format_number(kernel.width()));
  emit("half_width_over_omega", format_number(kernel.width() / config.omega()));
  return kExitOk;
}

std::string bundle_name(const std::string& stem, const SweepPoint& p) {
  return stem + "_ratio" + format_number(p.ratio) + "_omega" + format_number(p.omega) + ".csv";
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const auto recipe = recipe_of(o);
  const SimConfig raw = raw_config(o);
  ExperimentRecipe plan;
  if (recipe) {
    plan = *recipe;
  } else {
    plan.name = "compare";
    const double ratio = static_cast<double>(raw.n_gaussian) / static_cast<double>(raw.n_delta);
    plan.ratios = {ratio};
    plan.omegas = {1.0};
  }
  plan.kernel = kernel_choice(o, recipe ? recipe->kernel : KernelChoice{});
  const bool with_fd = o.with_eulerian || plan.with_eulerian;

  std::vector<SweepPoint> points;
  if (recipe) {
    points = sweep(plan, raw);
  } else {
    points.push_back({raw, plan.ratios.front(), 1.0});
  }
  if (points.size() > 1 && o.out_dir.empty()) {
    throw UsageError("recipe '" + plan.name + "' has " + std::to_string(points.size()) +
                     " sweep points; pass --out-dir");
  }
  if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);

  for (const SweepPoint& point : points) {
    const Config config = validate_config(point.config);
    const auto grid = output_grid(o, config);
    const auto options = run_options(o);
    const bool has_gaussian = plan.kernel.mode != KernelChoice::Mode::Dirac;

    const auto dirac = engine::run_ensemble(config, KernelSpec::dirac(), grid, options);
    const std::vector<double>& times = dirac.trace.times;
    const auto dirac_moment = moments::solve_mean_concentration(KernelSpec::dirac(), config, times);
    std::vector<double> mixed(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      mixed[i] = moments::well_mixed(times[i], config.c0(), config.rate_constant());
    }

    Table table;
    table.comments = header("compare", config, o);
    table.comments.push_back("recipe = " + plan.name);
    table.comments.push_back("width_choice = " + plan.kernel.describe());
    table.add_column("time", times);
    table.add_column("dirac_particle", dirac.trace.mean);
    table.add_column("dirac_particle_std", dirac.trace.stddev);

    if (has_gaussian) {
      const KernelSpec kernel = resolve(config, plan.kernel);
      report_kernel(kernel, plan.kernel, config, err);
      const auto gaussian = engine::run_ensemble(config, kernel, grid, options);
      std::vector<double> discrepancy(times.size());
      for (std::size_t i = 0; i < times.size(); ++i) {
        discrepancy[i] = std::abs(gaussian.trace.mean[i] - dirac.trace.mean[i]);
      }
      table.comments.push_back("kernel = " + kernel.describe());
      table.comments.push_back(
          "max_discrepancy = " +
          format_number(*std::max_element(discrepancy.begin(), discrepancy.end())));
      table.comments.push_back("final_discrepancy = " + format_number(discrepancy.back()));
      table.add_column("gaussian_particle", gaussian.trace.mean);
      table.add_column("gaussian_particle_std", gaussian.trace.stddev);
      table.add_column("dirac_moment", dirac_moment.trace.mean);
      if (kernel.kind() != KernelKind::VariableGaussian) {
        table.add_column("gaussian_moment",
                         moments::solve_mean_concentration(kernel, config, times).trace.mean);
      }
      table.add_column("discrepancy", discrepancy);
      table.add_column("width_over_omega", width_over_omega(kernel, config, times));
    } else {
      table.add_column("dirac_moment", dirac_moment.trace.mean);
    }
    table.add_column("well_mixed", mixed);
    if (with_fd) {
      const double amplitude = eulerian::default_amplitude(config);
      const auto fd = eulerian::fd_ensemble(config, amplitude, grid);
      table.comments.push_back("fd_amplitude = " + format_number(amplitude));
      table.add_column("fd", fd.trace.mean);
      table.add_column("fd_std", fd.trace.stddev);
    }

    if (o.out_dir.empty()) {
      write_csv(o.out, table, out);
    } else {
      const auto path = std::filesystem::path(o.out_dir) / bundle_name(plan.name, point);
      write_csv(path.string(), table, out);
      err << "wrote " << path.string() << '\n';
    }
  }
  return kExitOk;
}

int cmd_snapshot(const Options& o, std::ostream& out, std::ostream& err) {
  const Config config = validate_config(raw_config(o));
  const KernelChoice choice = kernel_choice(o, {KernelChoice::Mode::Dirac, 0.0});
  const KernelSpec kernel = resolve(config, choice);
  report_kernel(kernel, choice, config, err);
  engine::RunOptions options = run_options(o);
  options.snapshot_times = o.times.empty() ? std::vector<double>{config.t_final()} : o.times;
  options.snapshot_fraction = o.threshold_fraction;
  const auto run =
      engine::run_realization(config, kernel, config.seed(), options.snapshot_times, options);

  Table table;
  table.comments = header("snapshot", config, o);
  table.comments.push_back("kernel = " + kernel.describe());
  if (!run.snapshots.empty()) {
    table.comments.push_back("threshold = " + format_number(run.snapshots.front().threshold));
  }
  table.comments.push_back("species: 0 = A, 1 = B");
  table.columns = {"time", "species"};
  for (int c = 0; c < config.dim(); ++c) {
    table.columns.push_back(config.dim() == 1 ? "position" : "position_" + std::to_string(c));
  }
  table.columns.push_back("mass");
  for (const auto& snap : run.snapshots) {
    table.comments.push_back("species_blocks(t = " + format_number(snap.time) + ") = " +
                             std::to_string(engine::count_species_blocks(snap)));
    for (const auto& p : snap.particles) {
      std::vector<double> row{snap.time, p.species == engine::Species::A ? 0.0 : 1.0};
      row.insert(row.end(), p.position.begin(), p.position.end());
      row.push_back(p.mass);
      table.rows.push_back(std::move(row));
    }
  }
  write_csv(o.out, table, out);
  return kExitOk;
}

class SinkGuard {
 public:
  explicit SinkGuard(std::ostream& err)
      : previous_(diag::set_sink([&err](const std::string& m) { err << "warning: " << m << '\n'; })) {}
  ~SinkGuard() { diag::set_sink(previous_); }
  SinkGuard(const SinkGuard&) = delete;
  SinkGuard& operator=(const SinkGuard&) = delete;

 private:
  diag::Sink previous_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  SinkGuard sink(err);
  CLI::App app{"Kernel-based reactive particle tracking for A + B -> 0", "krpt"};
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "particle ensemble trace");
  add_config_options(simulate, o);
  add_kernel_options(simulate, o);
  add_grid_options(simulate, o);
  add_engine_options(simulate, o);
  simulate->add_option("-o,--out", o.out, "output CSV (default stdout)");

  auto* moments_cmd = app.add_subcommand("moments", "Dirac and Gaussian moment-equation traces");
  add_config_options(moments_cmd, o);
  add_kernel_options(moments_cmd, o);
  add_grid_options(moments_cmd, o);
  moments_cmd->add_option("-o,--out", o.out, "output CSV (default stdout)");

  auto* match = app.add_subcommand("match-width", "resolve the Gaussian half-width");
  add_config_options(match, o);
  match->add_option("--strategy", o.strategy, "t-star, least-squares or max-time")
      ->check(CLI::IsMember({"t-star", "least-squares", "max-time"}));
  match->add_option("--t-star", o.t_star, "matching time for --strategy t-star");

  auto* compare = app.add_subcommand("compare", "particle, moment, well-mixed and FD bundle");
  add_config_options(compare, o);
  add_kernel_options(compare, o);
  add_grid_options(compare, o);
  add_engine_options(compare, o);
  compare->add_flag("--with-eulerian", o.with_eulerian, "add the finite-difference ensemble");
  compare->add_option("-o,--out", o.out, "output CSV for a single bundle (default stdout)");
  compare->add_option("--out-dir", o.out_dir, "directory for one CSV per sweep point");

  auto* snapshot = app.add_subcommand("snapshot", "particles above a mass threshold");
  add_config_options(snapshot, o);
  add_kernel_options(snapshot, o);
  add_engine_options(snapshot, o);
  snapshot->add_option("--times", o.times, "snapshot times (default t_final)")->delimiter(',');
  snapshot->add_option("--threshold", o.threshold_fraction,
                       "mass threshold as a fraction of the Dirac particle mass");
  snapshot->add_option("-o,--out", o.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(o, out, err);
    if (moments_cmd->parsed()) return cmd_moments(o, out, err);
    if (match->parsed()) return cmd_match_width(o, out);
    if (compare->parsed()) return cmd_compare(o, out, err);
    return cmd_snapshot(o, out, err);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleMatchTimeError& e) {
    err << "error: " << e.what() << '\n'
        << "tau_star = " << format_number(e.tau_star()) << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::Io;
    return usage ? kExitUsage : kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace krpt::cli
