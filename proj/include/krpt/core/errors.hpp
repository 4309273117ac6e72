#ifndef KRPT_CORE_ERRORS_HPP
#define KRPT_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace krpt {

/// Named failure conditions raised by the library.
enum class ErrorCode {
  InvalidConfig,
  ZeroDiffusion,
  DegenerateKernel,
  InfeasibleMatchTime,
  EmptyTimeGrid,
  InvalidTimeGrid,
  SingularAtZero,
  NoConvergence,
  MassOverdraw,
  EmptyTrace,
  InsufficientEnsemble,
  NegativeConcentrationRisk,
  NegativeConcentration,
  UnsupportedKernel,
  UnsupportedDimension,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the error-code prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// One failed invariant of a raw configuration.
enum class ConfigViolation {
  NegativeDiffusion,
  NegativeRateConstant,
  NonPositiveConcentration,
  NonPositiveDomain,
  NonPositiveDimension,
  ZeroDiracCount,
  GaussianCountOutOfRange,  // N_G == 0 or N_G > N_delta
  NonPositiveTimeStep,
  FinalTimeBeforeStep,
  ZeroRealizations,
  NonFiniteParameter,
};

std::string_view to_string(ConfigViolation violation);

/// Raised by validate_config; lists every violated invariant, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigViolation> violations);

  const std::vector<ConfigViolation>& violations() const noexcept { return violations_; }
  bool has(ConfigViolation v) const noexcept;

 private:
  std::vector<ConfigViolation> violations_;
};

/// Raised when a requested matching time lies beyond the feasible maximum.
class InfeasibleMatchTimeError : public Error {
 public:
  InfeasibleMatchTimeError(double requested, double tau_star);

  double requested() const noexcept { return requested_; }
  double tau_star() const noexcept { return tau_star_; }

 private:
  double requested_;
  double tau_star_;
};

}  // namespace krpt

#endif  // KRPT_CORE_ERRORS_HPP
