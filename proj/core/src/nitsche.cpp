#include "annulus/nitsche.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "annulus/error.hpp"

namespace annulus {
namespace {

// acosh(e^y) = y + log(1 + sqrt(1 - e^{-2y})), finite for every y > 0.
double acosh_of_exp(double y) { return y + std::log1p(std::sqrt(-std::expm1(-2.0 * y))); }

}  // namespace

double nitsche_bound(double r_target, const EnergyParams& params) {
  if (!(r_target > 1.0) || !std::isfinite(r_target)) {
    throw Error(ErrorCode::DegenerateAnnulus, fmt::format("R={} must exceed 1", r_target));
  }
  validate_params(params);
  if (is_lambda_one(params.lambda)) return std::numeric_limits<double>::infinity();
  const double m = std::abs(params.lambda - 1.0);
  const double log_base = acosh_of_exp(m * std::log(r_target));
  return std::exp(params.a / (params.b * m) * log_base);
}

FeasibilityReport check_feasibility(const AnnulusPair& annuli, const EnergyParams& params) {
  validate(annuli, params);
  FeasibilityReport report;
  report.bound = nitsche_bound(annuli.r_target, params);
  report.r_domain = annuli.r_domain;
  report.feasible = annuli.r_domain <= report.bound;
  report.margin = report.bound - annuli.r_domain;
  return report;
}

}  // namespace annulus
