#include "annulus/ode_verify.hpp"

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"

namespace annulus {
namespace odeint = boost::numeric::odeint;

ProfileJet closed_form_jet(const ExtremalSolution& solution, double t) {
  const auto& p = solution.params();
  const double h = extremal_profile(solution, t);
  if (solution.branch() == Branch::LambdaEq1) {
    const double e = std::log(solution.annuli().r_target) / std::log(solution.annuli().r_domain);
    return {h, e * h / t, e * (e - 1.0) * h / (t * t)};
  }
  // H = C t^(b/a) D^(-1/(lambda-1)), D = S^2 - k t^q, q = 2 (lambda-1) b/a.
  // H'/H = g(t) = (b/a) (1/t + 2 k t^(q-1) / D), H''/H = g^2 + g'.
  const double ratio = p.b / p.a;
  const double k = solution.alpha() / (p.b * p.b);
  const double s1 = 1.0 + std::sqrt(std::max(0.0, 1.0 + k));
  const double q = 2.0 * (p.lambda - 1.0) * ratio;
  const double tq = std::exp(q * std::log(t));
  const double d = s1 * s1 - k * tq;
  // (D + 2 k t^q) / D written as (S^2 + k t^q) / D to avoid cancelling at alpha_min
  const double g = ratio / t * (s1 * s1 + k * tq) / d;
  const double dg = ratio * (-1.0 / (t * t) +
                             2.0 * k * ((q - 1.0) * tq / (t * t) / d + k * q * tq * tq / (t * t) / (d * d)));
  return {h, h * g, h * (g * g + dg)};
}

double euler_lagrange_residual(const ProfileJet& jet, double t, const EnergyParams& params) {
  const double a2 = params.a * params.a;
  const double b2 = params.b * params.b;
  return a2 * t * t * jet.value * jet.second + a2 * t * jet.value * jet.first +
         (params.lambda - 1.0) * b2 * jet.value * jet.value -
         params.lambda * a2 * t * t * jet.first * jet.first;
}

double first_integral(double t, double value, double derivative, const EnergyParams& params) {
  const double zeta = t * derivative;
  return (params.a * params.a * zeta * zeta - params.b * params.b * value * value) /
         std::pow(value, 2.0 * params.lambda);
}

double max_normalized_el_residual(const ExtremalSolution& solution, std::size_t samples) {
  const double r = solution.annuli().r_domain;
  const auto& p = solution.params();
  const auto grid = log_grid(r, samples + 2);
  double worst = 0.0;
  double max_slope_sq = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto jet = closed_form_jet(solution, grid[i]);
    max_slope_sq = std::max(max_slope_sq, jet.first * jet.first);
    if (i == 0 || i + 1 == grid.size()) continue;
    worst = std::max(worst, std::abs(euler_lagrange_residual(jet, grid[i], p)));
  }
  return worst / (p.a * p.a * r * r * max_slope_sq);
}

RadialProfile Trajectory::profile() const {
  RadialProfile out;
  for (const auto& s : states) {
    out.t.push_back(std::exp(s.x));
    out.values.push_back(s.y);
  }
  return out;
}

double Trajectory::first_integral_drift() const {
  auto omega = [&](const ShootingState& s) {
    return (params.a * params.a * s.zeta * s.zeta - params.b * params.b * s.y * s.y) /
           std::pow(s.y, 2.0 * params.lambda);
  };
  const double start = omega(states.front());
  double drift = 0.0;
  for (const auto& s : states) drift = std::max(drift, std::abs(omega(s) - start));
  return drift;
}

Trajectory shoot(double alpha, const EnergyParams& params, double r_domain,
                 const ShootOptions& options) {
  if (!(r_domain > 1.0) || !std::isfinite(r_domain)) {
    throw Error(ErrorCode::DegenerateAnnulus, fmt::format("r={} must exceed 1", r_domain));
  }
  validate_params(params);
  if (options.samples < 2) throw Error(ErrorCode::InvalidArgument, "need >= 2 samples");
  const double a2 = params.a * params.a;
  const double b2 = params.b * params.b;
  const double start_radicand = alpha + b2;
  if (start_radicand < 0.0) {
    throw Error(ErrorCode::RadicandNegative,
                fmt::format("alpha={} < -b^2: no real initial slope", alpha));
  }

  using State = std::array<double, 2>;
  const double lambda = params.lambda;
  auto system = [&](const State& s, State& ds, double /*x*/) {
    const double y = s[0];
    const double z = s[1];
    ds[0] = z;
    ds[1] = (lambda * a2 * z * z - (lambda - 1.0) * b2 * y * y) / (a2 * y);
  };

  const double x_end = std::log(r_domain);
  const auto t_nodes = log_grid(r_domain, options.samples);
  std::vector<double> x_nodes(t_nodes.size());
  for (std::size_t i = 0; i < t_nodes.size(); ++i) x_nodes[i] = std::log(t_nodes[i]);
  x_nodes.front() = 0.0;
  x_nodes.back() = x_end;

  Trajectory out;
  out.alpha = alpha;
  out.params = params;
  State state{1.0, std::sqrt(start_radicand) / params.a};
  // Slope tolerance for the turning point at alpha_min (zeta -> 0 at x = ln r).
  const double zeta_floor = -1e-6 * (params.b / params.a);

  auto observer = [&](const State& s, double x) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || s[0] <= 0.0) {
      throw Error(ErrorCode::StepFailure, fmt::format("non-finite state at x={}", x));
    }
    if (s[1] < zeta_floor) {
      throw Error(ErrorCode::RadicandNegative,
                  fmt::format("trajectory turned back at x={} (zeta={}); alpha={} is below "
                              "the admissible range",
                              x, s[1], alpha));
    }
    out.states.push_back({x, s[0], s[1]});
  };

  try {
    auto stepper = odeint::make_controlled(options.abs_tol, options.rel_tol,
                                           odeint::runge_kutta_dopri5<State>());
    odeint::integrate_times(stepper, system, state, x_nodes.begin(), x_nodes.end(),
                            x_end / 64.0, observer, odeint::max_step_checker(100000));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::StepFailure, e.what());
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const auto& p = trajectory.params;
  out << "x,y,zeta,omega\n";
  for (const auto& s : trajectory.states) {
    const double omega =
        (p.a * p.a * s.zeta * s.zeta - p.b * p.b * s.y * s.y) / std::pow(s.y, 2.0 * p.lambda);
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.x, s.y, s.zeta, omega);
  }
}

}  // namespace annulus
