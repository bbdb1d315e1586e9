#include <cmath>

#include <gtest/gtest.h>

#include "annulus/alpha_solver.hpp"
#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/nitsche.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace annulus {
namespace {

using testing::direct_nitsche;
using testing::direct_phi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an annulus::Error";
  return ErrorCode::InvalidArgument;
}

TEST(Phi, AtZeroIsPowerOfTarget) {
  EXPECT_NEAR(phi(0.0, 1.25, {1.0, 1.0, 2.0}), 1.25, 1e-12);
  EXPECT_NEAR(phi(0.0, 1.7, {2.0, 0.5, -1.0}), std::pow(1.7, 4.0), 1e-12);
}

TEST(Phi, AtAlphaMinIsBound) {
  EXPECT_NEAR(phi(-0.64, 1.25, {1.0, 1.0, 2.0}), 2.0, 1e-12);
  EXPECT_NEAR(phi(-1.0, 1.25, {1.0, 1.0, 0.0}), 2.0, 1e-12);
}

TEST(Phi, Errors) {
  EXPECT_EQ(code_of([] { phi(0.0, 1.25, {1.0, 1.0, 1.0}); }), ErrorCode::LambdaOne);
  EXPECT_EQ(code_of([] { phi(-0.7, 1.25, {1.0, 1.0, 2.0}); }), ErrorCode::OutOfDomain);
  EXPECT_EQ(code_of([] { phi(-1.01, 1.25, {1.0, 1.0, 0.0}); }), ErrorCode::OutOfDomain);
}

TEST(Phi, TendsToOne) {
  EXPECT_NEAR(phi(1e8, 1.5, {1.0, 1.0, 2.0}), 1.0, 1e-3);
  EXPECT_NEAR(phi(1e8, 1.5, {1.0, 1.0, 0.0}), 1.0, 1e-3);
}

TEST(SolveAlpha, ReferenceConfiguration) {
  const auto s = solve_alpha({1.5, 1.25}, {1.0, 1.0, 2.0});
  EXPECT_NEAR(s.alpha, -0.5376, 1e-4);
  EXPECT_LE(s.phi_residual, 1e-12 * 1.5);
  // Independent pow-form evaluation at the returned alpha.
  EXPECT_NEAR(direct_phi(s.alpha, 1.25, 1.0, 1.0, 2.0), 1.5, 1e-11);
}

TEST(SolveAlpha, PowerMapGivesZero) {
  const double R = 1.3;
  const auto s = solve_alpha({std::pow(R, 1.5), R}, {1.5, 1.0, 3.0});
  EXPECT_NEAR(s.alpha, 0.0, 1e-10);
}

TEST(SolveAlpha, BoundaryReturnsAlphaMinExactly) {
  const EnergyParams p{1.0, 1.0, 0.0};
  const double bound = nitsche_bound(1.25, p);
  const auto s = solve_alpha({bound, 1.25}, p);
  EXPECT_EQ(s.alpha, alpha_min(1.25, 1.0, 0.0));
}

TEST(SolveAlpha, Errors) {
  EXPECT_EQ(code_of([] { solve_alpha({2.5, 1.25}, {1.0, 1.0, 0.0}); }), ErrorCode::Infeasible);
  EXPECT_EQ(code_of([] { solve_alpha({2.0, 1.25}, {1.0, 1.0, 1.0}); }), ErrorCode::LambdaOne);
  EXPECT_EQ(code_of([] { solve_alpha({1.5, 1.25}, {1.0, 1.0, 2.0}, {1e-12, 3}); }),
            ErrorCode::NoConvergence);
}

TEST(AlphaForLambdaOne, Examples) {
  const double e = std::exp(1.0);
  EXPECT_NEAR(alpha_for_lambda1({e, e * e}, {1.0, 1.0, 1.0}), 3.0, 1e-12);
  EXPECT_NEAR(alpha_for_lambda1({e, e}, {1.0, 2.0, 1.0}), -3.0, 1e-12);
  EXPECT_NEAR(alpha_for_lambda1({3.0, std::pow(3.0, 0.5)}, {2.0, 1.0, 1.0}), 0.0, 1e-12);
  EXPECT_EQ(code_of([] { alpha_for_lambda1({1.0, 2.0}, {1.0, 1.0, 1.0}); }),
            ErrorCode::DegenerateAnnulus);
}

TEST(Bracket, ContainsRoot) {
  const AnnulusPair annuli{1.5, 1.25};
  const EnergyParams p{1.0, 1.0, 2.0};
  const auto br = bracket_alpha(annuli, p);
  EXPECT_LE(br.lo, br.hi);
  EXPECT_GE(phi(br.lo, 1.25, p), 1.5);
  EXPECT_LE(phi(br.hi, 1.25, p), 1.5);
}

TEST(Property, PhiBoundaryValueMatchesBound) {
  Lcg64 rng(21);
  for (int i = 0; i < 50; ++i) {
    const double R = rng.uniform(1.05, 3.0);
    const double a = rng.uniform(0.3, 3.0);
    const double b = rng.uniform(0.3, 3.0);
    const double lambda = i % 2 ? rng.uniform(1.1, 4.0) : rng.uniform(-3.0, 0.9);
    const double bound = direct_nitsche(R, a, b, lambda);
    EXPECT_NEAR(phi(alpha_min(R, b, lambda), R, {a, b, lambda}), bound, 1e-10 * bound);
  }
}

TEST(Property, PhiStrictlyDecreasing) {
  Lcg64 rng(33);
  for (int i = 0; i < 300; ++i) {
    const double R = rng.uniform(1.05, 3.0);
    const double a = rng.uniform(0.3, 3.0);
    const double b = rng.uniform(0.3, 3.0);
    const double lambda = i % 2 ? rng.uniform(1.2, 4.0) : rng.uniform(-3.0, 0.8);
    const double lo = alpha_min(R, b, lambda);
    const double x1 = lo + rng.uniform(0.0, 5.0);
    const double x2 = x1 + rng.uniform(0.01, 5.0);
    EXPECT_GT(phi(x1, R, {a, b, lambda}), phi(x2, R, {a, b, lambda}));
  }
}

TEST(Property, RoundTripThroughTargetRelation) {
  for (const auto& c : testing::feasible_cases(45, 60, {-1.0, 0.0, 0.5, 2.0, 3.0})) {
    SCOPED_TRACE(c.describe());
    const auto s = solve_alpha({c.r, c.R}, {c.a, c.b, c.lambda});
    EXPECT_GE(s.alpha, alpha_min(c.R, c.b, c.lambda));
    EXPECT_NEAR(direct_phi(s.alpha, c.R, c.a, c.b, c.lambda), c.r, 10 * 1e-12 * c.r + 1e-12);
    EXPECT_NEAR(target_radius_from_alpha(s.alpha, c.r, {c.a, c.b, c.lambda}), c.R,
                1e-10 * c.R);
  }
}

}  // namespace
}  // namespace annulus
