#include "annulus/types.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "annulus/error.hpp"

namespace annulus {

void validate_params(const EnergyParams& params) {
  if (!(params.a > 0.0) || !(params.b > 0.0) || !std::isfinite(params.a) ||
      !std::isfinite(params.b)) {
    throw Error(ErrorCode::NonPositiveWeight,
                fmt::format("weights must be positive and finite (a={}, b={})", params.a,
                            params.b));
  }
  if (!std::isfinite(params.lambda)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
  }
}

Configuration validate(const AnnulusPair& annuli, const EnergyParams& params) {
  if (!(annuli.r_domain > 1.0) || !(annuli.r_target > 1.0) || !std::isfinite(annuli.r_domain) ||
      !std::isfinite(annuli.r_target)) {
    throw Error(ErrorCode::DegenerateAnnulus,
                fmt::format("outer radii must exceed 1 (r={}, R={})", annuli.r_domain,
                            annuli.r_target));
  }
  validate_params(params);
  return {annuli, params};
}

std::string_view to_string(Branch branch) noexcept {
  return branch == Branch::LambdaEq1 ? "lambda_eq_1" : "lambda_ne_1";
}

double alpha_min(double r_target, double b, double lambda) {
  if (lambda > 1.0) {
    return -b * b / std::pow(r_target, 2.0 * (lambda - 1.0));
  }
  return -b * b;
}

ExtremalSolution ExtremalSolution::create(const AnnulusPair& annuli, const EnergyParams& params,
                                          double alpha) {
  validate(annuli, params);
  if (!std::isfinite(alpha)) {
    throw Error(ErrorCode::OutOfDomain, "alpha must be finite");
  }
  if (is_lambda_one(params.lambda)) {
    return ExtremalSolution(annuli, params, alpha, Branch::LambdaEq1);
  }
  if (std::abs(params.lambda - 1.0) < kNearLambdaOne) {
    throw Error(ErrorCode::NearLambdaOne,
                fmt::format("lambda={} is within {} of 1; pass lambda = 1 exactly for the "
                            "logarithmic branch",
                            params.lambda, kNearLambdaOne));
  }
  const double lo = alpha_min(annuli.r_target, params.b, params.lambda);
  if (alpha < lo) {
    throw Error(ErrorCode::OutOfDomain,
                fmt::format("alpha={} is below alpha_min={}", alpha, lo));
  }
  return ExtremalSolution(annuli, params, alpha, Branch::LambdaNe1);
}

bool ExtremalSolution::at_feasibility_boundary() const noexcept {
  return branch_ == Branch::LambdaNe1 &&
         alpha_ == alpha_min(annuli_.r_target, params_.b, params_.lambda);
}

bool strictly_increasing(std::span<const double> xs) noexcept {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) return false;
  }
  return true;
}

void check_profile(const RadialProfile& profile, const AnnulusPair& annuli) {
  const auto& t = profile.t;
  const auto& h = profile.values;
  if (t.size() != h.size() || t.size() < 2) {
    throw Error(ErrorCode::MonotonicityViolation, "profile arrays must match and hold >= 2 nodes");
  }
  if (t.front() != 1.0 || t.back() != annuli.r_domain || h.front() != 1.0 ||
      h.back() != annuli.r_target) {
    throw Error(ErrorCode::MonotonicityViolation, "profile endpoints are not pinned");
  }
  if (!strictly_increasing(t) || !strictly_increasing(h)) {
    throw Error(ErrorCode::MonotonicityViolation, "profile is not strictly increasing");
  }
}

std::vector<double> log_grid(double r, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "log grid needs at least 2 nodes");
  std::vector<double> t(n);
  const double step = std::log(r) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) t[i] = std::exp(step * static_cast<double>(i));
  t.front() = 1.0;
  t.back() = r;
  return t;
}

}  // namespace annulus
