#include "annulus/energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"

namespace annulus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Below ~1e-11 the adaptive error estimate is dominated by roundoff and grows with depth.
constexpr double kQuadTol = 1e-11;
constexpr double kAcceptRelError = 1e-10;
constexpr unsigned kMaxDepth = 18;

template <class F>
EnergyReport integrate(F&& f, double lo, double hi, const char* what) {
  auto accepted = [](double value, double error) {
    return std::isfinite(value) && error <= kAcceptRelError * std::max(1.0, std::abs(value));
  };
  double error = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, kMaxDepth,
                                                                          kQuadTol, &error, &l1);
    value *= kTwoPi;
    error *= kTwoPi;
    if (accepted(value, error)) return {value, EnergyMethod::RadialQuadrature, error};
    // Endpoint peaks near the feasibility boundary: tanh-sinh clusters nodes there.
    boost::math::quadrature::tanh_sinh<double> fallback;
    value = kTwoPi * fallback.integrate(f, lo, hi, kQuadTol, &error, &l1);
    error *= kTwoPi;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::QuadratureFailure, fmt::format("{}: {}", what, e.what()));
  }
  if (!accepted(value, error)) {
    throw Error(ErrorCode::QuadratureFailure,
                fmt::format("{}: error estimate {} for value {}", what, error, value));
  }
  return {value, EnergyMethod::RadialQuadrature, error};
}

}  // namespace

std::string_view to_string(EnergyMethod method) noexcept {
  switch (method) {
    case EnergyMethod::ClosedForm: return "closed_form";
    case EnergyMethod::RadialQuadrature: return "radial_quadrature";
    case EnergyMethod::GridQuadrature: return "grid_quadrature";
  }
  return "unknown";
}

std::string to_json(const EnergyReport& report) {
  nlohmann::json j;
  j["value"] = report.value;
  j["method"] = std::string(to_string(report.method));
  j["est_error"] = report.est_error;
  return j.dump();
}

RadialMap radial_map(const ExtremalSolution& solution) {
  return {[solution](double t) { return extremal_profile(solution, t); },
          [solution](double t) { return extremal_derivative(solution, t); }};
}

EnergyReport radial_energy(const RadialMap& map, const AnnulusPair& annuli,
                           const EnergyParams& params) {
  validate(annuli, params);
  const double r = annuli.r_domain;
  auto integrand = [&](double x) {
    const double t = std::min(r, std::exp(x));
    const double h = map.modulus(t);
    const double dh = map.derivative(t);
    const double value = (params.a * params.a * t * t * dh * dh + params.b * params.b * h * h) /
                         (t * std::pow(h, 2.0 * params.lambda));
    return value * t;  // dt = t dx
  };
  return integrate(integrand, 0.0, std::log(r), "radial_energy");
}

EnergyReport closed_form_energy(const ExtremalSolution& solution) {
  const auto& p = solution.params();
  const double R = solution.annuli().r_target;
  if (solution.branch() == Branch::LambdaEq1) {
    const double log_r = std::log(solution.annuli().r_domain);
    const double log_R = std::log(R);
    const double value =
        kTwoPi * log_R * (p.a * p.a * log_R / log_r + p.b * p.b * log_r / log_R);
    return {value, EnergyMethod::ClosedForm, 0.0};
  }
  const double k = solution.alpha() / (p.b * p.b);
  const double inv_q = std::pow(R, -2.0 * (p.lambda - 1.0));  // R^(-2(lambda-1))
  const double inner = std::sqrt(std::max(0.0, 1.0 + k));
  const double outer = std::sqrt(std::max(0.0, inv_q + k));
  const double value = kTwoPi * p.a * p.b / (p.lambda - 1.0) *
                       (inner - std::pow(R, -(p.lambda - 1.0)) * outer);
  return {value, EnergyMethod::ClosedForm, 0.0};
}

EnergyReport grid_energy(const PolarField& field, const EnergyParams& params) {
  validate_params(params);
  if (!field.has_derivatives()) {
    throw Error(ErrorCode::MissingDerivatives, "grid_energy needs h_N and h_T samples");
  }
  if (field.t_weights.size() != field.t.size() ||
      field.h.size() != field.t.size() * field.theta.size()) {
    throw Error(ErrorCode::InvalidArgument, "polar field arrays are inconsistent");
  }
  const double dtheta = kTwoPi / static_cast<double>(field.theta.size());
  double total = 0.0;
  for (std::size_t i = 0; i < field.t.size(); ++i) {
    double ring = 0.0;
    for (std::size_t j = 0; j < field.theta.size(); ++j) {
      const std::size_t idx = field.index(i, j);
      const double density = params.a * params.a * std::norm(field.h_normal[idx]) +
                             params.b * params.b * std::norm(field.h_tangential[idx]);
      ring += density / std::pow(std::abs(field.h[idx]), 2.0 * params.lambda);
    }
    total += field.t_weights[i] * field.t[i] * ring * dtheta;
  }
  if (!std::isfinite(total)) {
    throw Error(ErrorCode::QuadratureFailure, "grid energy is not finite");
  }
  return {total, EnergyMethod::GridQuadrature, 0.0};
}

EnergyReport distortion_energy(const PolarField& field, const EnergyParams& params) {
  validate_params(params);
  if (!field.has_derivatives()) {
    throw Error(ErrorCode::MissingDerivatives, "distortion_energy needs h_N and h_T samples");
  }
  const double dtheta = kTwoPi / static_cast<double>(field.theta.size());
  double total = 0.0;
  for (std::size_t i = 0; i < field.t.size(); ++i) {
    const double t = field.t[i];
    double ring = 0.0;
    for (std::size_t j = 0; j < field.theta.size(); ++j) {
      const std::size_t idx = field.index(i, j);
      const std::complex<double> hn = field.h_normal[idx];
      const std::complex<double> ht = field.h_tangential[idx];
      const double jacobian = std::imag(std::conj(hn) * ht);
      if (!(jacobian > 0.0)) {
        throw Error(ErrorCode::NonPositiveJacobian,
                    fmt::format("J={} at t={}, theta={}", jacobian, t, field.theta[j]));
      }
      // e^{-i Theta} h_N = rho_t + i rho Theta_t, e^{-i Theta} h_T = rho_theta/t + i rho Theta_theta/t
      const std::complex<double> unit = std::conj(field.h[idx]) / std::abs(field.h[idx]);
      const std::complex<double> n = unit * hn;
      const std::complex<double> tg = unit * ht;
      const double grad_rho_sq = n.real() * n.real() + tg.real() * tg.real();
      const double rho_grad_theta_sq = n.imag() * n.imag() + tg.imag() * tg.imag();
      ring += (params.a * params.a * rho_grad_theta_sq + params.b * params.b * grad_rho_sq) /
              jacobian;
    }
    total += field.t_weights[i] * t * ring * dtheta / std::pow(t, 2.0 * params.lambda);
  }
  return {total, EnergyMethod::GridQuadrature, 0.0};
}

EnergyReport distortion_energy(const RadialMap& map, const AnnulusPair& annuli,
                               const EnergyParams& params) {
  validate(annuli, params);
  const double r = annuli.r_domain;
  auto integrand = [&](double x) {
    const double t = std::min(r, std::exp(x));
    const double h = map.modulus(t);
    const double dh = map.derivative(t);
    if (!(dh > 0.0)) {
      throw Error(ErrorCode::NonPositiveJacobian, fmt::format("H'={} at t={}", dh, t));
    }
    const double value = (params.a * params.a * h * h / dh + params.b * params.b * t * t * dh) /
                         (h * std::pow(t, 2.0 * params.lambda));
    return value * t;
  };
  auto report = integrate(integrand, 0.0, std::log(r), "distortion_energy");
  return report;
}

EnergyReport inverse_energy(const ExtremalSolution& solution) {
  const auto& p = solution.params();
  const double R = solution.annuli().r_target;
  const double exponent = std::log(R) / std::log(solution.annuli().r_domain);
  auto integrand = [&](double x) {
    const double s = std::min(R, std::exp(x));
    const double inv = inverse_profile(solution, s);
    double slope = 0.0;
    if (solution.branch() == Branch::LambdaEq1) {
      slope = inv / (exponent * s);
    } else {
      const double radicand = slope_radicand(solution, s);
      if (!(radicand > 0.0)) {
        throw Error(ErrorCode::QuadratureFailure,
                    fmt::format("inverse slope unbounded at s={}", s));
      }
      slope = inv * p.a / (s * std::sqrt(radicand));
    }
    const double value = (p.a * p.a * s * s * slope * slope + p.b * p.b * inv * inv) /
                         (s * std::pow(inv, 2.0 * p.lambda));
    return value * s;
  };
  return integrate(integrand, 0.0, std::log(R), "inverse_energy");
}

}  // namespace annulus
