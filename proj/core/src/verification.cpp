#include "annulus/verification.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/energy.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/ode_verify.hpp"

namespace annulus {
namespace {

VerifyCheck make_check(std::string name, double value, double threshold) {
  return VerifyCheck{std::move(name), value, threshold, value <= threshold, false};
}

double relative_gap(double x, double y) {
  return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

}  // namespace

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify_solution(const ExtremalSolution& solution) {
  VerifyReport report;
  const auto& annuli = solution.annuli();
  const auto& params = solution.params();
  const double alpha = solution.alpha();

  report.checks.push_back(
      make_check("el_residual", max_normalized_el_residual(solution, 100), 1e-6));

  double fi_gap = 0.0;
  for (double t : log_grid(annuli.r_domain, 100)) {
    const double h = extremal_profile(solution, t);
    const double dh = extremal_derivative(solution, t);
    fi_gap = std::max(fi_gap, std::abs(first_integral(t, h, dh, params) - alpha));
  }
  report.checks.push_back(
      make_check("first_integral_closed_form", fi_gap / std::max(1.0, std::abs(alpha)), 1e-9));

  const Trajectory trajectory = shoot(alpha, params, annuli.r_domain);
  report.checks.push_back(make_check(
      "shoot_endpoint", std::abs(trajectory.terminal_value() - annuli.r_target), 1e-8));
  report.checks.push_back(
      make_check("shoot_first_integral_drift", trajectory.first_integral_drift(), 1e-9));
  double shoot_gap = 0.0;
  for (const auto& s : trajectory.states) {
    const double t = std::clamp(std::exp(s.x), 1.0, annuli.r_domain);
    shoot_gap = std::max(shoot_gap, std::abs(s.y - extremal_profile(solution, t)));
  }
  report.checks.push_back(make_check("shoot_vs_closed_form", shoot_gap, 1e-8));

  const double closed = closed_form_energy(solution).value;
  const double quad = radial_energy(radial_map(solution), annuli, params).value;
  report.checks.push_back(
      make_check("energy_closed_vs_quadrature", relative_gap(closed, quad), 1e-8));

  if (solution.at_feasibility_boundary()) {
    report.checks.push_back(VerifyCheck{"duality", 0.0, 1e-7, true, true});
  } else {
    const double distortion =
        distortion_energy(radial_map(solution), annuli, params).value;
    const double inverse = inverse_energy(solution).value;
    report.checks.push_back(make_check("duality", relative_gap(distortion, inverse), 1e-7));
  }
  return report;
}

}  // namespace annulus
