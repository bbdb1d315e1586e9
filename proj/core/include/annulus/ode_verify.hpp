#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "annulus/types.hpp"

namespace annulus {

/// Point on an extremal trajectory in logarithmic coordinates:
/// x = ln t, y = H(e^x), zeta = dy/dx = t H'(t).
struct ShootingState {
  double x = 0.0;
  double y = 1.0;
  double zeta = 0.0;
};

/// H and its first two t-derivatives at one radius.
struct ProfileJet {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// Jet of the closed-form extremal profile from analytic (logarithmic)
/// differentiation of the closed form itself; it does not use the first-order ODE.
ProfileJet closed_form_jet(const ExtremalSolution& solution, double t);

/// a^2 t^2 H H'' + a^2 t H H' + (lambda - 1) b^2 H^2 - lambda a^2 t^2 H'^2.
double euler_lagrange_residual(const ProfileJet& jet, double t, const EnergyParams& params);

/// (a^2 zeta^2 - b^2 y^2) / y^(2 lambda) with y = H(t), zeta = t H'(t).
/// Constant and equal to alpha along extremals.
double first_integral(double t, double value, double derivative, const EnergyParams& params);

/// Largest |EL residual| over `samples` log-spaced interior radii, divided by
/// the scale a^2 r^2 max H'^2.
double max_normalized_el_residual(const ExtremalSolution& solution, std::size_t samples = 100);

struct ShootOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  std::size_t samples = 65;  // log-spaced output radii including both ends
};

struct Trajectory {
  double alpha = 0.0;
  EnergyParams params;
  std::vector<ShootingState> states;

  RadialProfile profile() const;  // t = e^x, values = y (endpoints not pinned)
  double terminal_value() const { return states.back().y; }
  /// max_i |omega(x_i) - omega(x_0)|
  double first_integral_drift() const;
};

/// Integrates a^2 y y'' = lambda a^2 y'^2 - (lambda - 1) b^2 y^2 from
/// (x, y, zeta) = (0, 1, sqrt(alpha + b^2)/a) to x = ln r with an adaptive
/// Dormand-Prince 5(4) stepper. RadicandNegative if alpha < -b^2 or the
/// trajectory turns back (zeta < 0) before x = ln r; StepFailure if the
/// stepper cannot make progress.
Trajectory shoot(double alpha, const EnergyParams& params, double r_domain,
                 const ShootOptions& options = {});

/// CSV with header `x,y,zeta,omega`, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace annulus
