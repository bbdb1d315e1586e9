#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "annulus/energy.hpp"
#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/nitsche.hpp"
#include "annulus/ode_verify.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace annulus {
namespace {

using testing::central_difference;

const double kE = std::numbers::e;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an annulus::Error";
  return ErrorCode::InvalidArgument;
}

TEST(Shoot, ZeroAlphaRecoversPowerMap) {
  const EnergyParams p{1.3, 0.9, 0.5};
  const auto traj = shoot(0.0, p, 2.2);
  ASSERT_EQ(traj.states.size(), 65u);
  double worst = 0.0;
  for (const auto& s : traj.states) {
    worst = std::max(worst, std::abs(s.y - std::exp(0.9 / 1.3 * s.x)));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Shoot, ReferenceConfigurationHitsTarget) {
  const auto s = solve_alpha({1.5, 1.25}, {1.0, 1.0, 2.0});
  const auto traj = shoot(s.alpha, {1.0, 1.0, 2.0}, 1.5);
  EXPECT_NEAR(traj.terminal_value(), 1.25, 1e-8);
  EXPECT_NEAR(traj.states.back().x, std::log(1.5), 1e-15);
}

TEST(Shoot, LambdaOne) {
  const auto traj = shoot(3.0, {1.0, 1.0, 1.0}, kE);
  EXPECT_NEAR(traj.terminal_value(), kE * kE, 1e-8);
}

TEST(Shoot, Errors) {
  EXPECT_EQ(code_of([] { shoot(-1.2, {1.0, 1.0, 0.0}, 2.0); }), ErrorCode::RadicandNegative);
  // Below alpha_min for lambda > 1 the trajectory turns back before x = ln r.
  EXPECT_EQ(code_of([] { shoot(-0.8, {1.0, 1.0, 2.0}, 10.0); }), ErrorCode::RadicandNegative);
  EXPECT_EQ(code_of([] { shoot(0.0, {1.0, 1.0, 2.0}, 1.0); }), ErrorCode::DegenerateAnnulus);
}

TEST(Shoot, AlphaMinStartsFlatForLambdaBelowOne) {
  const EnergyParams p{1.0, 1.0, 0.0};
  const double bound = nitsche_bound(1.25, p);
  const auto traj = shoot(-1.0, p, bound);
  EXPECT_EQ(traj.states.front().zeta, 0.0);
  EXPECT_NEAR(traj.terminal_value(), 1.25, 1e-8);
}

TEST(TrajectoryCsv, Header) {
  std::ostringstream out;
  write_trajectory_csv(out, shoot(0.0, {1.0, 1.0, 0.0}, 2.0, {1e-12, 1e-12, 9}));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,zeta,omega");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
}

TEST(FirstIntegral, Examples) {
  const EnergyParams p{1.5, 0.6, 3.0};
  for (double t : {1.0, 1.3, 2.0}) {
    const double e = 0.6 / 1.5;
    EXPECT_NEAR(first_integral(t, std::pow(t, e), e * std::pow(t, e - 1.0), p), 0.0, 1e-12);
    EXPECT_NEAR(first_integral(t, t, 1.0, {1.0, 1.0, 0.0}), 0.0, 1e-12);
  }
  const auto s = solve_extremal({1.5, 1.25}, {1.0, 1.0, 2.0});
  for (double t : log_grid(1.5, 17)) {
    EXPECT_NEAR(first_integral(t, extremal_profile(s, t), extremal_derivative(s, t), s.params()),
                s.alpha(), 1e-9);
  }
}

TEST(EulerLagrange, HandComputedResiduals) {
  // Identity with a = b is the alpha = 0 extremal for every lambda.
  for (double t : {1.2, 1.7}) {
    EXPECT_NEAR(euler_lagrange_residual({t, 1.0, 0.0}, t, {1.0, 1.0, 2.0}), 0.0, 1e-14);
    // H = t^2 at lambda = 0: 2t^4 + 2t^4 - t^4.
    EXPECT_NEAR(euler_lagrange_residual({t * t, 2.0 * t, 2.0}, t, {1.0, 1.0, 0.0}),
                3.0 * std::pow(t, 4), 1e-12);
  }
  // Power map t^(b/a) for arbitrary lambda.
  const EnergyParams p{0.7, 1.1, -1.5};
  const double e = 1.1 / 0.7;
  for (double t : {1.1, 1.5, 2.5}) {
    const ProfileJet jet{std::pow(t, e), e * std::pow(t, e - 1.0), e * (e - 1.0) * std::pow(t, e - 2.0)};
    const double scale = 0.49 * t * t * jet.first * jet.first;
    EXPECT_LE(std::abs(euler_lagrange_residual(jet, t, p)) / scale, 1e-12);
  }
}

TEST(Property, ClosedFormJetMatchesDifferences) {
  for (const auto& c : testing::feasible_cases(202, 20, {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    const double h = 1e-3 * (c.r - 1.0);
    for (double u : {0.25, 0.5, 0.75}) {
      const double t = 1.0 + u * (c.r - 1.0);
      const auto jet = closed_form_jet(s, t);
      EXPECT_NEAR(jet.value, extremal_profile(s, t), 1e-13 * jet.value);
      EXPECT_NEAR(jet.first, extremal_derivative(s, t), 1e-10 * std::max(1.0, jet.first));
      const double second = central_difference(
          [&](double x) { return extremal_derivative(s, x); }, t, h);
      EXPECT_NEAR(jet.second, second, 1e-7 * std::max(1.0, std::abs(second)));
    }
  }
}

TEST(Property, ExtremalResidualSmall) {
  for (const auto& c : testing::feasible_cases(303, 30, {-1.0, 0.0, 0.5, 1.0, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    EXPECT_LE(max_normalized_el_residual(s, 100), 1e-6);
  }
  for (double lambda : {-1.0, 0.0, 2.0, 3.0}) {
    const EnergyParams p{1.0, 1.3, lambda};
    const auto s = solve_extremal({nitsche_bound(1.3, p), 1.3}, p);
    EXPECT_LE(max_normalized_el_residual(s, 100), 1e-6) << "boundary lambda=" << lambda;
  }
}

TEST(Property, ShootingAgreesWithClosedForm) {
  for (const auto& c : testing::feasible_cases(404, 20, {-1.0, 0.0, 0.5, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_extremal({c.r, c.R}, {c.a, c.b, c.lambda});
    const auto traj = shoot(s.alpha(), s.params(), c.r);
    EXPECT_LE(traj.first_integral_drift(), 1e-9);
    EXPECT_NEAR(traj.terminal_value(), c.R, 1e-8);
    for (const auto& st : traj.states) {
      const double t = std::min(std::exp(st.x), c.r);
      EXPECT_NEAR(st.y, extremal_profile(s, t), 1e-8);
    }
  }
}

// Halving the size of a pinned bump halves the EL residual and quarters the
// energy gap.
TEST(Property, ResidualAndEnergyGapScale) {
  const AnnulusPair annuli{1.7, 1.35};
  const EnergyParams p{1.1, 0.9, 2.0};
  const auto s = solve_extremal(annuli, p);
  const double L = std::log(annuli.r_domain);
  const double closed = closed_form_energy(s).value;
  const double k = testing::kPi / L;
  double previous_gap = 0.0;
  double previous_residual = 0.0;
  for (double eps : {4e-3, 2e-3, 1e-3, 5e-4}) {
    // bump(t) = eps sin^2(k ln t)
    auto bump = [&](double t) { return eps * std::pow(std::sin(k * std::log(t)), 2); };
    auto dbump = [&](double t) { return eps * k * std::sin(2 * k * std::log(t)) / t; };
    auto ddbump = [&](double t) {
      const double x = k * std::log(t);
      return eps * k * (2 * k * std::cos(2 * x) - std::sin(2 * x)) / (t * t);
    };
    RadialMap map{[&](double t) { return extremal_profile(s, t) + bump(t); },
                  [&](double t) { return extremal_derivative(s, t) + dbump(t); }};
    const double gap = radial_energy(map, annuli, p).value - closed;
    double residual = 0.0;
    for (double t : log_grid(annuli.r_domain, 50)) {
      auto jet = closed_form_jet(s, t);
      jet.value += bump(t);
      jet.first += dbump(t);
      jet.second += ddbump(t);
      residual = std::max(residual, std::abs(euler_lagrange_residual(jet, t, p)));
    }
    EXPECT_GT(gap, 0.0);
    if (previous_gap > 0.0) {
      EXPECT_LT(gap, previous_gap);
      EXPECT_NEAR(previous_gap / gap, 4.0, 0.5);
      EXPECT_NEAR(previous_residual / residual, 2.0, 0.2);
    }
    previous_gap = gap;
    previous_residual = residual;
  }
}

}  // namespace
}  // namespace annulus
