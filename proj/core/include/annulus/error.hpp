#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace annulus {

enum class ErrorCode {
  DegenerateAnnulus,
  NonPositiveWeight,
  InvalidArgument,
  NearLambdaOne,
  OutOfDomain,
  LambdaOne,
  OutOfRange,
  Infeasible,
  NoConvergence,
  DegenerateDenominator,
  QuadratureFailure,
  MissingDerivatives,
  NonPositiveJacobian,
  RadicandNegative,
  StepFailure,
  MonotonicityViolation,
  MonotonicityLost,
};

std::string_view to_string(ErrorCode code) noexcept;

// Input problems the caller can fix by changing arguments, as opposed to
// numerical failures inside an otherwise valid computation.
bool is_validation_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace annulus
