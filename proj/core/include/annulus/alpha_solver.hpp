#pragma once

#include "annulus/types.hpp"

namespace annulus {

/// Domain radius reached by the extremal trajectory with first-integral
/// constant alpha, for lambda != 1:
///
///   phi(alpha) = [R^(lambda-1) (1 + sqrt(1 + alpha/b^2))
///                 / (1 + sqrt(1 + R^(2 lambda - 2) alpha/b^2))]^((a/b)/(lambda-1))
///
/// phi is strictly decreasing on [alpha_min, inf), equals the Nitsche bound at
/// alpha_min, R^(a/b) at 0, and tends to 1 as alpha grows.
double phi(double alpha, double r_target, const EnergyParams& params);

/// Bracket [lo, hi] with phi(lo) >= r >= phi(hi). `tol` is an absolute
/// resolution on alpha; 0 disables it so only the phi residual stops the search.
struct AlphaBracket {
  double lo = 0.0;
  double hi = 0.0;
  double tol = 0.0;
};

AlphaBracket bracket_alpha(const AnnulusPair& annuli, const EnergyParams& params);

struct AlphaSolveOptions {
  double rel_tol = 1e-12;  // |phi(alpha) - r| <= rel_tol * max(1, r)
  int max_iterations = 200;
};

struct AlphaSolution {
  double alpha = 0.0;
  double phi_residual = 0.0;  // |phi(alpha) - r|
  int iterations = 0;
};

/// Bisection on phi(alpha) = r. Throws LambdaOne for lambda == 1, Infeasible
/// when r exceeds the Nitsche bound and NoConvergence at the iteration cap.
/// Returns alpha_min exactly when r sits on the bound.
AlphaSolution solve_alpha(const AnnulusPair& annuli, const EnergyParams& params,
                          const AlphaSolveOptions& options = {});

/// lambda == 1: alpha = a^2 (ln R / ln r)^2 - b^2.
double alpha_for_lambda1(const AnnulusPair& annuli, const EnergyParams& params);

}  // namespace annulus
