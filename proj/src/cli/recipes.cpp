#include "krpt/cli/recipes.hpp"

#include <cmath>
#include <sstream>

#include "krpt/cli/csv.hpp"
#include "krpt/moments/moments.hpp"

namespace krpt::cli {

std::string KernelChoice::describe() const {
  switch (mode) {
    case Mode::Dirac: return "dirac";
    case Mode::Fixed: return "fixed(" + format_number(value) + ")";
    case Mode::SpecificTime: return "t-star(" + format_number(value) + ")";
    case Mode::LeastSquares: return "least-squares";
    case Mode::Variable: return "variable";
  }
  return "unknown";
}

KernelSpec resolve(const Config& config, const KernelChoice& choice) {
  using Mode = KernelChoice::Mode;
  switch (choice.mode) {
    case Mode::Dirac: return KernelSpec::dirac();
    case Mode::Fixed: return KernelSpec::fixed_gaussian(choice.value);
    case Mode::Variable: return KernelSpec::variable_gaussian();
    case Mode::SpecificTime:
      return kernels::resolve_kernel(config, kernels::SpecificTime{choice.value}, {});
    case Mode::LeastSquares:
      return kernels::resolve_kernel(config, kernels::LeastSquares{},
                                     moments::make_moment_solver(config));
  }
  return KernelSpec::dirac();
}

const std::vector<ExperimentRecipe>& recipes() {
  using Mode = KernelChoice::Mode;
  static const std::vector<ExperimentRecipe> all = [] {
    const std::vector<double> ratios{0.9, 0.5, 0.3, 0.1};
    std::vector<ExperimentRecipe> r;
    r.push_back({"base", "Dirac particles, N = 1000, against the Dirac moment solution", {},
                 {1.0}, {1.0}, {Mode::Dirac, 0.0}, false});
    r.push_back({"tstar100", "widths matched at t* = 100", {}, ratios, {1.0},
                 {Mode::SpecificTime, 100.0}, false});
    r.push_back({"tstar1000", "widths matched at t* = 1000", {}, ratios, {1.0},
                 {Mode::SpecificTime, 1000.0}, false});
    r.push_back({"least-squares", "widths fitted to the Dirac moment solution", {}, ratios,
                 {1.0}, {Mode::LeastSquares, 0.0}, false});
    r.push_back({"variable", "width re-matched at every step", {}, ratios, {1.0},
                 {Mode::Variable, 0.0}, false});
    r.push_back({"omega-sweep", "variable width, N_G / N_delta = 0.1, N proportional to Omega",
                 {}, {0.1}, {1.0, 2.0, 4.0, 8.0, 16.0}, {Mode::Variable, 0.0}, false});
    r.push_back({"eulerian-compare", "least-squares width at 0.1 with the finite-difference reference",
                 {}, {0.1}, {1.0}, {Mode::LeastSquares, 0.0}, true});
    return r;
  }();
  return all;
}

std::optional<ExperimentRecipe> find_recipe(std::string_view name) {
  for (const auto& r : recipes()) {
    if (r.name == name) return r;
  }
  return std::nullopt;
}

std::vector<SweepPoint> sweep(const ExperimentRecipe& recipe, const SimConfig& base) {
  std::vector<SweepPoint> points;
  for (double omega : recipe.omegas) {
    for (double ratio : recipe.ratios) {
      SweepPoint p;
      p.config = base;
      p.ratio = ratio;
      p.omega = omega;
      p.config.omega = base.omega * omega;
      p.config.n_delta = static_cast<std::size_t>(std::llround(static_cast<double>(base.n_delta) * omega));
      p.config.n_gaussian = static_cast<std::size_t>(
          std::llround(ratio * static_cast<double>(p.config.n_delta)));
      points.push_back(p);
    }
  }
  return points;
}

}  // namespace krpt::cli
