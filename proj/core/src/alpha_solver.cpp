#include "annulus/alpha_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "annulus/error.hpp"
#include "annulus/nitsche.hpp"

namespace annulus {
namespace {

constexpr double kRadicandClamp = -1e-14;

double clamp_radicand(double value) {
  if (value < 0.0) {
    if (value < kRadicandClamp) {
      throw Error(ErrorCode::OutOfDomain, fmt::format("negative radicand {}", value));
    }
    return 0.0;
  }
  return value;
}

void require_power_branch(const EnergyParams& params) {
  if (is_lambda_one(params.lambda)) {
    throw Error(ErrorCode::LambdaOne, "phi is undefined for lambda = 1");
  }
  if (std::abs(params.lambda - 1.0) < kNearLambdaOne) {
    throw Error(ErrorCode::NearLambdaOne,
                fmt::format("lambda={} is too close to 1; use lambda = 1", params.lambda));
  }
}

}  // namespace

double phi(double alpha, double r_target, const EnergyParams& params) {
  validate_params(params);
  require_power_branch(params);
  const double lambda = params.lambda;
  const double lo = alpha_min(r_target, params.b, lambda);
  if (!(alpha >= lo)) {
    throw Error(ErrorCode::OutOfDomain, fmt::format("alpha={} below alpha_min={}", alpha, lo));
  }
  const double k = alpha / (params.b * params.b);
  const double q = std::pow(r_target, 2.0 * (lambda - 1.0));
  // The radicand that vanishes at alpha_min is written as a multiple of
  // alpha - alpha_min, so it is exactly zero there.
  const double b2 = params.b * params.b;
  const double inner = lambda > 1.0 ? clamp_radicand(1.0 + k) : (alpha - lo) / b2;
  const double outer = lambda > 1.0 ? q * (alpha - lo) / b2 : clamp_radicand(std::fma(q, k, 1.0));
  const double log_base = (lambda - 1.0) * std::log(r_target) + std::log1p(std::sqrt(inner)) -
                          std::log1p(std::sqrt(outer));
  return std::exp(params.a / (params.b * (lambda - 1.0)) * log_base);
}

AlphaBracket bracket_alpha(const AnnulusPair& annuli, const EnergyParams& params) {
  validate(annuli, params);
  require_power_branch(params);
  const double r = annuli.r_domain;
  AlphaBracket bracket;
  bracket.lo = alpha_min(annuli.r_target, params.b, params.lambda);
  double offset = std::max(0.0, bracket.lo + 1.0) - bracket.lo;
  bracket.hi = bracket.lo + offset;
  // phi -> 1 < r, so doubling terminates; the cap guards against NaN input.
  for (int i = 0; i < 4096 && phi(bracket.hi, annuli.r_target, params) >= r; ++i) {
    offset *= 2.0;
    bracket.hi = bracket.lo + offset;
  }
  return bracket;
}

AlphaSolution solve_alpha(const AnnulusPair& annuli, const EnergyParams& params,
                          const AlphaSolveOptions& options) {
  validate(annuli, params);
  require_power_branch(params);
  const auto feasibility = check_feasibility(annuli, params);
  if (!feasibility.feasible) {
    throw Error(ErrorCode::Infeasible,
                fmt::format("r={} exceeds the Nitsche bound {}", annuli.r_domain,
                            feasibility.bound));
  }

  const double r = annuli.r_domain;
  const double R = annuli.r_target;
  const double tol = options.rel_tol * std::max(1.0, r);

  const double lo_alpha = alpha_min(R, params.b, params.lambda);
  const double phi_lo = phi(lo_alpha, R, params);
  if (r >= phi_lo) {
    return {lo_alpha, std::abs(phi_lo - r), 0};
  }

  auto bracket = bracket_alpha(annuli, params);
  double lo = bracket.lo;
  double hi = bracket.hi;
  double best_alpha = hi;
  double best_residual = std::abs(phi(hi, R, params) - r);

  for (int it = 1; it <= options.max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi || (bracket.tol > 0.0 && hi - lo <= bracket.tol)) {
      // Bracket collapsed to adjacent doubles.
      const double r_lo = std::abs(phi(lo, R, params) - r);
      const double r_hi = std::abs(phi(hi, R, params) - r);
      return r_lo <= r_hi ? AlphaSolution{lo, r_lo, it} : AlphaSolution{hi, r_hi, it};
    }
    const double value = phi(mid, R, params);
    const double residual = std::abs(value - r);
    if (residual < best_residual) {
      best_alpha = mid;
      best_residual = residual;
    }
    if (residual <= tol) return {mid, residual, it};
    if (value > r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(ErrorCode::NoConvergence,
              fmt::format("bisection hit {} iterations (best alpha={}, residual={})",
                          options.max_iterations, best_alpha, best_residual));
}

double alpha_for_lambda1(const AnnulusPair& annuli, const EnergyParams& params) {
  validate(annuli, params);
  if (!is_lambda_one(params.lambda)) {
    throw Error(ErrorCode::InvalidArgument, "alpha_for_lambda1 requires lambda = 1");
  }
  const double exponent = std::log(annuli.r_target) / std::log(annuli.r_domain);
  return params.a * params.a * exponent * exponent - params.b * params.b;
}

}  // namespace annulus
