#pragma once

// Reference computations written directly from the textbook formulas, with no
// calls into the library under test.

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace annulus::testing {

inline constexpr double kPi = std::numbers::pi;

/// (R^m + sqrt(R^(2m) - 1))^(a/(b m)), m = |lambda - 1|, straight pow form.
inline double direct_nitsche(double R, double a, double b, double lambda) {
  const double m = std::abs(lambda - 1.0);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  const double Rm = std::pow(R, m);
  return std::pow(Rm + std::sqrt(Rm * Rm - 1.0), a / (b * m));
}

inline double direct_phi(double alpha, double R, double a, double b, double lambda) {
  const double k = alpha / (b * b);
  const double num = std::pow(R, lambda - 1.0) * (1.0 + std::sqrt(1.0 + k));
  const double den = 1.0 + std::sqrt(std::max(0.0, 1.0 + std::pow(R, 2.0 * lambda - 2.0) * k));
  return std::pow(num / den, (a / b) / (lambda - 1.0));
}

/// Radial modulus of the lambda = 2 minimizer in its stand-alone form.
inline double lambda_two_modulus(double alpha, double t, double a, double b) {
  const double s = 1.0 + std::sqrt(1.0 + alpha / (b * b));
  const double tp = std::pow(t, b / a);
  return 2.0 * s * tp / (s * s - tp * tp * alpha / (b * b));
}

/// Composite Simpson rule with `intervals` (even) uniform panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi,
                      int intervals) {
  const double h = (hi - lo) / intervals;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return sum * h / 3.0;
}

/// 2 pi int_1^r (a^2 t^2 H'^2 + b^2 H^2) / (t H^(2 lambda)) dt, Simpson in x = ln t.
inline double simpson_radial_energy(const std::function<double(double)>& H,
                                    const std::function<double(double)>& dH, double r, double a,
                                    double b, double lambda, int intervals = 20000) {
  auto integrand = [&](double x) {
    const double t = std::min(r, std::exp(x));
    const double h = H(t);
    const double d = dH(t);
    return (a * a * t * t * d * d + b * b * h * h) / std::pow(h, 2.0 * lambda);
  };
  return 2.0 * kPi * simpson(integrand, 0.0, std::log(r), intervals);
}

/// Energy of t -> t^(b/a) for lambda != 1, integrated by hand.
inline double power_map_energy(double r, double a, double b, double lambda) {
  return 2.0 * kPi * a * b / (1.0 - lambda) * (std::pow(r, 2.0 * b * (1.0 - lambda) / a) - 1.0);
}

/// Fourth-order central difference.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace annulus::testing
