#include "annulus/extremal_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "annulus/error.hpp"
#include "annulus/nitsche.hpp"

namespace annulus {
namespace {

void require_in(double value, double lo, double hi, const char* what) {
  if (!(value >= lo && value <= hi)) {
    throw Error(ErrorCode::OutOfRange,
                fmt::format("{}={} outside [{}, {}]", what, value, lo, hi));
  }
}

double power_exponent(const ExtremalSolution& solution) {
  return std::log(solution.annuli().r_target) / std::log(solution.annuli().r_domain);
}

}  // namespace

ExtremalSolution solve_extremal(const AnnulusPair& annuli, const EnergyParams& params,
                                const AlphaSolveOptions& options) {
  validate(annuli, params);
  if (is_lambda_one(params.lambda)) {
    return ExtremalSolution::create(annuli, params, alpha_for_lambda1(annuli, params));
  }
  const auto solved = solve_alpha(annuli, params, options);
  return ExtremalSolution::create(annuli, params, solved.alpha);
}

double extremal_modulus(double alpha, double t, const EnergyParams& params) {
  const double lambda = params.lambda;
  const double k = alpha / (params.b * params.b);
  const double s1 = 1.0 + std::sqrt(std::max(0.0, 1.0 + k));
  const double ratio = params.b / params.a;
  const double tq = std::exp(2.0 * (lambda - 1.0) * ratio * std::log(t));
  const double denominator = s1 * s1 - tq * k;
  if (!(denominator > 0.0)) {
    throw Error(ErrorCode::DegenerateDenominator,
                fmt::format("closed-form denominator {} at t={} (alpha={})", denominator, t,
                            alpha));
  }
  const double log_h =
      (std::log(2.0 * s1) - std::log(denominator)) / (lambda - 1.0) + ratio * std::log(t);
  return std::exp(log_h);
}

double target_radius_from_alpha(double alpha, double r_domain, const EnergyParams& params) {
  validate_params(params);
  if (is_lambda_one(params.lambda)) {
    throw Error(ErrorCode::LambdaOne, "no alpha relation for R on the lambda = 1 branch");
  }
  return extremal_modulus(alpha, r_domain, params);
}

double extremal_profile(const ExtremalSolution& solution, double t) {
  const double r = solution.annuli().r_domain;
  require_in(t, 1.0, r, "t");
  const double R = solution.annuli().r_target;
  if (t == 1.0) return 1.0;
  if (t == r) return R;
  if (solution.branch() == Branch::LambdaEq1) {
    return std::min(R, std::exp(power_exponent(solution) * std::log(t)));
  }
  return std::clamp(extremal_modulus(solution.alpha(), t, solution.params()), 1.0, R);
}

double extremal_derivative(const ExtremalSolution& solution, double t) {
  const double h = extremal_profile(solution, t);
  const auto& p = solution.params();
  if (solution.branch() == Branch::LambdaEq1) {
    const double e = power_exponent(solution);
    return e * h / t;
  }
  // alpha H^(2 lambda) + b^2 H^2 = H^2 (b^2 + alpha H^(2 lambda - 2))
  return h * std::sqrt(std::max(0.0, slope_radicand(solution, h))) / (p.a * t);
}

namespace {

// excess y^e - b^2 expm1(e d) with e = 2 lambda - 2 and d = ln y - ln y_flat, where
// y_flat is the radius at which the radicand vanishes for alpha = alpha_min.
double radicand_from_log(const ExtremalSolution& solution, double y, double d) {
  const auto& p = solution.params();
  const double e = 2.0 * p.lambda - 2.0;
  const double excess = solution.alpha() - alpha_min(solution.annuli().r_target, p.b, p.lambda);
  return excess * std::pow(y, e) - p.b * p.b * std::expm1(e * d);
}

double flat_log(const ExtremalSolution& solution) {
  return solution.params().lambda > 1.0 ? std::log(solution.annuli().r_target) : 0.0;
}

}  // namespace

double slope_radicand(const ExtremalSolution& solution, double y) {
  const auto& p = solution.params();
  if (solution.branch() == Branch::LambdaEq1) return solution.alpha() + p.b * p.b;
  return radicand_from_log(solution, y, std::log(y) - flat_log(solution));
}

double t_of_y(const ExtremalSolution& solution, double y) {
  const double R = solution.annuli().r_target;
  require_in(y, 1.0, R, "y");
  if (y == 1.0) return 1.0;
  const auto& p = solution.params();
  const bool lambda_eq_1 = solution.branch() == Branch::LambdaEq1;
  const double x0 = flat_log(solution);
  const double mid = 0.5 * (1.0 + y);
  // sc is the signed distance to the nearer endpoint (1 - s or y - s); it keeps
  // ln s - x0 accurate where the radicand vanishes at the flat endpoint.
  auto integrand = [&](double s, double sc) {
    double radicand = 0.0;
    if (lambda_eq_1) {
      radicand = slope_radicand(solution, s);
    } else if (x0 == 0.0 && s < mid) {
      radicand = radicand_from_log(solution, s, std::log1p(-sc));
    } else if (x0 != 0.0 && s >= mid) {
      radicand = radicand_from_log(solution, s, std::log1p(((y - R) - sc) / R));
    } else {
      radicand = radicand_from_log(solution, s, std::log(s) - x0);
    }
    if (!(radicand > 0.0)) return std::numeric_limits<double>::infinity();
    return p.a / (s * std::sqrt(radicand));
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = integrator.integrate(integrand, 1.0, y, 1e-13, &error, &l1);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::QuadratureFailure, fmt::format("t_of_y({}): {}", y, e.what()));
  }
  if (!std::isfinite(value) || error > 1e-10 * std::max(1.0, std::abs(value))) {
    throw Error(ErrorCode::QuadratureFailure,
                fmt::format("t_of_y({}) error estimate {} for value {}", y, error, value));
  }
  return std::exp(value);
}

double inverse_profile(const ExtremalSolution& solution, double rho) {
  const double r = solution.annuli().r_domain;
  const double R = solution.annuli().r_target;
  require_in(rho, 1.0, R, "rho");
  if (rho == 1.0) return 1.0;
  if (rho == R) return r;
  auto residual = [&](double t) { return extremal_profile(solution, t) - rho; };
  std::uintmax_t max_iter = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      residual, 1.0, r, 1.0 - rho, R - rho,
      boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1),
      max_iter);
  const double f_lo = std::abs(residual(lo));
  const double f_hi = std::abs(residual(hi));
  return f_lo <= f_hi ? lo : hi;
}

std::complex<double> full_map(const ExtremalSolution& solution, double beta,
                              std::complex<double> z) {
  const double r = solution.annuli().r_domain;
  double t = std::abs(z);
  // Polar round trips can land a few ulps outside the closed annulus.
  constexpr double kSlack = 8.0 * std::numeric_limits<double>::epsilon();
  if (t < 1.0 && t >= 1.0 - kSlack) t = 1.0;
  if (t > r && t <= r * (1.0 + kSlack)) t = r;
  require_in(t, 1.0, r, "|z|");
  return std::polar(extremal_profile(solution, t), std::arg(z) + beta);
}

RadialProfile sample_profile(const ExtremalSolution& solution, std::size_t n) {
  RadialProfile profile;
  profile.t = log_grid(solution.annuli().r_domain, n);
  profile.values.reserve(n);
  for (double t : profile.t) profile.values.push_back(extremal_profile(solution, t));
  profile.values.front() = 1.0;
  profile.values.back() = solution.annuli().r_target;
  return profile;
}

void write_profile_csv(std::ostream& out, const ExtremalSolution& solution, std::size_t n) {
  const auto profile = sample_profile(solution, n);
  out << "t,H,Hdot\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n", profile.t[i], profile.values[i],
                       extremal_derivative(solution, profile.t[i]));
  }
}

}  // namespace annulus
