#ifndef KRPT_CLI_RECIPES_HPP
#define KRPT_CLI_RECIPES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krpt/core/config.hpp"
#include "krpt/core/kernel_spec.hpp"
#include "krpt/kernels/width.hpp"

namespace krpt::cli {

/// How the Gaussian population's kernel is chosen.
struct KernelChoice {
  enum class Mode { Dirac, Fixed, SpecificTime, LeastSquares, Variable };
  Mode mode = Mode::LeastSquares;
  double value = 0.0;  ///< half-width for Fixed, t* for SpecificTime

  std::string describe() const;
};

/// Resolves a choice into a kernel; Dirac and Fixed need no moment solves.
KernelSpec resolve(const Config& config, const KernelChoice& choice);

/// Named experiment family: a base configuration swept over N_G / N_delta and Omega.
struct ExperimentRecipe {
  std::string name;
  std::string summary;
  SimConfig base;
  std::vector<double> ratios;  ///< N_G / N_delta
  std::vector<double> omegas;  ///< N_delta and N_G scale with Omega
  KernelChoice kernel;
  bool with_eulerian = false;
};

const std::vector<ExperimentRecipe>& recipes();
std::optional<ExperimentRecipe> find_recipe(std::string_view name);

struct SweepPoint {
  SimConfig config;
  double ratio = 1.0;
  double omega = 1.0;
};

/**
 * @brief Every (ratio, Omega) combination, Omega outermost.
 *
 * Omega multiplies N_delta, keeping the particle Damkohler number fixed, and
 * N_G is rounded from ratio * N_delta.
 */
std::vector<SweepPoint> sweep(const ExperimentRecipe& recipe, const SimConfig& base);

}  // namespace krpt::cli

#endif  // KRPT_CLI_RECIPES_HPP
