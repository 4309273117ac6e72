#include "krpt/core/errors.hpp"

#include <algorithm>
#include <sstream>

namespace krpt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ZeroDiffusion: return "ZeroDiffusion";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::InfeasibleMatchTime: return "InfeasibleMatchTime";
    case ErrorCode::EmptyTimeGrid: return "EmptyTimeGrid";
    case ErrorCode::InvalidTimeGrid: return "InvalidTimeGrid";
    case ErrorCode::SingularAtZero: return "SingularAtZero";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::MassOverdraw: return "MassOverdraw";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::InsufficientEnsemble: return "InsufficientEnsemble";
    case ErrorCode::NegativeConcentrationRisk: return "NegativeConcentrationRisk";
    case ErrorCode::NegativeConcentration: return "NegativeConcentration";
    case ErrorCode::UnsupportedKernel: return "UnsupportedKernel";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(ConfigViolation violation) {
  switch (violation) {
    case ConfigViolation::NegativeDiffusion: return "NegativeDiffusion";
    case ConfigViolation::NegativeRateConstant: return "NegativeRateConstant";
    case ConfigViolation::NonPositiveConcentration: return "NonPositiveConcentration";
    case ConfigViolation::NonPositiveDomain: return "NonPositiveDomain";
    case ConfigViolation::NonPositiveDimension: return "NonPositiveDimension";
    case ConfigViolation::ZeroDiracCount: return "ZeroDiracCount";
    case ConfigViolation::GaussianCountOutOfRange: return "GaussianCountExceedsDiracOrZero";
    case ConfigViolation::NonPositiveTimeStep: return "NonPositiveTimeStep";
    case ConfigViolation::FinalTimeBeforeStep: return "FinalTimeBeforeStep";
    case ConfigViolation::ZeroRealizations: return "ZeroRealizations";
    case ConfigViolation::NonFiniteParameter: return "NonFiniteParameter";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

namespace {

std::string describe(const std::vector<ConfigViolation>& violations) {
  std::ostringstream out;
  out << "configuration rejected:";
  for (auto v : violations) out << ' ' << to_string(v);
  return out.str();
}

std::string describe_infeasible(double requested, double tau_star) {
  std::ostringstream out;
  out.precision(10);
  out << "matching time t* = " << requested
      << " exceeds the maximum feasible matching time tau* = " << tau_star
      << " (the kernel half-width would become imaginary)";
  return out.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigViolation> violations)
    : Error(ErrorCode::InvalidConfig, describe(violations)), violations_(std::move(violations)) {}

bool ConfigError::has(ConfigViolation v) const noexcept {
  return std::find(violations_.begin(), violations_.end(), v) != violations_.end();
}

InfeasibleMatchTimeError::InfeasibleMatchTimeError(double requested, double tau_star)
    : Error(ErrorCode::InfeasibleMatchTime, describe_infeasible(requested, tau_star)),
      requested_(requested),
      tau_star_(tau_star) {}

}  // namespace krpt
