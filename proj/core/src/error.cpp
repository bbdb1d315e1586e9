#include "annulus/error.hpp"

#include <string>

namespace annulus {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateAnnulus: return "DegenerateAnnulus";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NearLambdaOne: return "NearLambdaOne";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::LambdaOne: return "LambdaOne";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::MissingDerivatives: return "MissingDerivatives";
    case ErrorCode::NonPositiveJacobian: return "NonPositiveJacobian";
    case ErrorCode::RadicandNegative: return "RadicandNegative";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::MonotonicityLost: return "MonotonicityLost";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateAnnulus:
    case ErrorCode::NonPositiveWeight:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NearLambdaOne:
    case ErrorCode::OutOfDomain:
    case ErrorCode::LambdaOne:
    case ErrorCode::OutOfRange:
    case ErrorCode::MissingDerivatives:
    case ErrorCode::MonotonicityViolation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace annulus
