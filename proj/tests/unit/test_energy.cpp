#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "annulus/energy.hpp"
#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/nitsche.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace annulus {
namespace {

using testing::kPi;
using testing::relative_error;

const double kE = std::numbers::e;

RadialMap identity_map() {
  return RadialMap{[](double t) { return t; }, [](double) { return 1.0; }};
}

RadialMap power_map(double p) {
  return RadialMap{[p](double t) { return std::pow(t, p); },
                   [p](double t) { return p * std::pow(t, p - 1.0); }};
}

TEST(RadialEnergy, IdentityAtLambdaZero) {
  const auto rep = radial_energy(identity_map(), {2.0, 2.0}, {1.0, 1.0, 0.0});
  EXPECT_NEAR(rep.value, 6.0 * kPi, 1e-10);
  EXPECT_EQ(rep.method, EnergyMethod::RadialQuadrature);
  EXPECT_LE(rep.est_error, 1e-10 * rep.value);
}

TEST(RadialEnergy, PowerMapAgainstHandIntegration) {
  EXPECT_NEAR(radial_energy(identity_map(), {2.0, 2.0}, {1.0, 1.0, 2.0}).value, 1.5 * kPi, 1e-12);
  for (double lambda : {-1.0, 0.0, 0.5, 2.0, 3.0}) {
    const double a = 1.4, b = 0.7, r = 2.3;
    const double R = std::pow(r, b / a);
    const double ref = testing::power_map_energy(r, a, b, lambda);
    const auto rep = radial_energy(power_map(b / a), {r, R}, {a, b, lambda});
    EXPECT_LE(relative_error(rep.value, ref), 1e-12) << "lambda=" << lambda;
  }
}

TEST(ClosedFormEnergy, Examples) {
  const auto one = solve_extremal({kE, kE * kE}, {1.0, 1.0, 1.0});
  EXPECT_LE(relative_error(closed_form_energy(one).value, 10.0 * kPi), 1e-14);
  const auto zero = ExtremalSolution::create({2.0, 2.0}, {1.0, 1.0, 2.0}, 0.0);
  EXPECT_NEAR(closed_form_energy(zero).value, 1.5 * kPi, 1e-12);
  EXPECT_EQ(closed_form_energy(zero).method, EnergyMethod::ClosedForm);
}

TEST(ClosedFormEnergy, ReferenceConfigurationDualPath) {
  const auto s = solve_extremal({1.5, 1.25}, {1.0, 1.0, 2.0});
  const double closed = closed_form_energy(s).value;
  EXPECT_LE(relative_error(radial_energy(radial_map(s), {1.5, 1.25}, {1.0, 1.0, 2.0}).value, closed),
            1e-8);
}

TEST(Property, ClosedFormAgainstIndependentSimpson) {
  for (const auto& c : testing::feasible_cases(55, 30, {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    const double closed = closed_form_energy(s).value;
    const double ref = testing::simpson_radial_energy(
        [&](double t) { return extremal_profile(s, t); },
        [&](double t) { return extremal_derivative(s, t); }, c.r, c.a, c.b, c.lambda);
    EXPECT_LE(relative_error(closed, ref), 1e-9);
    EXPECT_GT(closed, 0.0);
  }
}

// Grid sweep over (r, R, a/b, lambda) with infeasible points skipped.
TEST(Property, ClosedFormAgainstQuadratureSweep) {
  int checked = 0;
  for (double r : {1.2, 1.6, 2.4})
    for (double R : {1.15, 1.5, 2.2})
      for (double ratio : {0.6, 1.0, 1.7})
        for (double lambda : {0.0, 0.5, 2.0, 3.0, 1.0}) {
          const AnnulusPair annuli{r, R};
          const EnergyParams p{ratio, 1.0, lambda};
          if (!check_feasibility(annuli, p).feasible) continue;
          const auto s = solve_extremal(annuli, p);
          const double closed = closed_form_energy(s).value;
          const double quad = radial_energy(radial_map(s), annuli, p).value;
          EXPECT_LE(relative_error(quad, closed), 1e-8)
              << "r=" << r << " R=" << R << " a/b=" << ratio << " lambda=" << lambda;
          ++checked;
        }
  EXPECT_GT(checked, 40);
}

TEST(GridEnergy, RadialFieldMatchesRadialEnergyAndRotationInvariant) {
  const auto s = solve_extremal({1.5, 1.25}, {1.0, 1.0, 2.0});
  const auto map = radial_map(s);
  const double radial = radial_energy(map, {1.5, 1.25}, {1.0, 1.0, 2.0}).value;
  double first = 0.0;
  for (double beta : {0.0, kPi / 3.0, kPi}) {
    const auto field = radial_polar_field({1.5, 1.25}, map.modulus, map.derivative, beta);
    const auto rep = grid_energy(field, {1.0, 1.0, 2.0});
    EXPECT_EQ(rep.method, EnergyMethod::GridQuadrature);
    EXPECT_LE(relative_error(rep.value, radial), 1e-8);
    if (beta == 0.0) first = rep.value;
    EXPECT_NEAR(rep.value, first, 1e-12 * first);
  }
}

TEST(GridEnergy, MissingDerivatives) {
  auto field = radial_polar_field({2.0, 2.0}, identity_map().modulus, identity_map().derivative,
                                  0.0, {8, 4});
  field.h_normal.clear();
  EXPECT_THROW(grid_energy(field, {1.0, 1.0, 0.0}), Error);
  try {
    grid_energy(field, {1.0, 1.0, 0.0});
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingDerivatives);
  }
}

// A pinned radial bump raises the energy above the minimum.
TEST(GridEnergy, PerturbedExtremalExceedsMinimum) {
  const AnnulusPair annuli{1.6, 1.3};
  const EnergyParams p{1.0, 1.2, 0.5};
  const auto s = solve_extremal(annuli, p);
  const double L = std::log(annuli.r_domain);
  const double eps = 0.01;
  auto H = [&](double t) {
    const double u = std::sin(kPi * std::log(t) / L);
    return extremal_profile(s, t) + eps * u * u;
  };
  auto dH = [&](double t) {
    const double x = kPi * std::log(t) / L;
    return extremal_derivative(s, t) + eps * std::sin(2.0 * x) * kPi / (L * t);
  };
  const auto field = radial_polar_field(annuli, H, dH, 0.0);
  EXPECT_GT(grid_energy(field, p).value, closed_form_energy(s).value + 1e-8);
}

TEST(DistortionEnergy, IdentityRegression) {
  const AnnulusPair annuli{2.0, 2.0};
  const EnergyParams p{1.0, 1.0, 0.0};
  EXPECT_NEAR(distortion_energy(identity_map(), annuli, p).value, 6.0 * kPi, 1e-10);
  const auto field =
      radial_polar_field(annuli, identity_map().modulus, identity_map().derivative, 0.0);
  EXPECT_NEAR(distortion_energy(field, p).value, 6.0 * kPi, 1e-9);
}

TEST(DistortionEnergy, RejectsOrientationReversal) {
  const AnnulusPair annuli{2.0, 2.0};
  const auto field = sample_polar_field(
      annuli,
      [](double t, double theta) {
        const auto phase = std::polar(1.0, -theta);
        return FieldSample{t * phase, phase, std::complex<double>(0.0, -1.0) * phase};
      },
      {8, 8});
  try {
    distortion_energy(field, {1.0, 1.0, 0.0});
    ADD_FAILURE() << "expected NonPositiveJacobian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveJacobian);
  }
}

TEST(InverseEnergy, PowerMapAnalytic) {
  for (double lambda : {-1.0, 0.0, 2.0}) {
    const double a = 1.3, b = 0.8, r = 1.9;
    const double R = std::pow(r, b / a);
    const auto s = ExtremalSolution::create({r, R}, {a, b, lambda}, 0.0);
    const double k = 2.0 * a * (1.0 - lambda) / b;
    const double ref = 2.0 * kPi * (a * a * a * a / (b * b) + b * b) * (std::pow(R, k) - 1.0) / k;
    EXPECT_LE(relative_error(inverse_energy(s).value, ref), 1e-10) << "lambda=" << lambda;
  }
}

TEST(InverseEnergy, LambdaOneRegression) {
  const auto s = solve_extremal({kE, kE * kE}, {1.0, 1.0, 1.0});
  EXPECT_LE(relative_error(inverse_energy(s).value, 5.0 * kPi), 1e-10);
}

TEST(Property, Duality) {
  for (const auto& c : testing::feasible_cases(91, 25, {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    const double k = distortion_energy(radial_map(s), {c.r, c.R}, {c.a, c.b, c.lambda}).value;
    const double e = inverse_energy(s).value;
    EXPECT_LE(relative_error(k, e), 1e-7);
  }
}

TEST(Property, PolarDistortionMatchesRadialReduction) {
  for (const auto& c : testing::feasible_cases(92, 6, {0.0, 2.0, 1.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    const auto map = radial_map(s);
    const double radial = distortion_energy(map, {c.r, c.R}, {c.a, c.b, c.lambda}).value;
    const auto field = radial_polar_field({c.r, c.R}, map.modulus, map.derivative, 1.1);
    EXPECT_LE(relative_error(distortion_energy(field, {c.a, c.b, c.lambda}).value, radial), 1e-8);
  }
}

TEST(EnergyReport, JsonRoundTrip) {
  const EnergyReport rep{31.415926535897931, EnergyMethod::RadialQuadrature, 3.3e-14};
  const auto j = nlohmann::json::parse(to_json(rep));
  EXPECT_EQ(j.at("value").get<double>(), rep.value);
  EXPECT_EQ(j.at("method").get<std::string>(), "radial_quadrature");
  EXPECT_EQ(j.at("est_error").get<double>(), rep.est_error);
}

}  // namespace
}  // namespace annulus
