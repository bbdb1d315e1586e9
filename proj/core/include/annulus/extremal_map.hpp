#pragma once

#include <complex>
#include <cstddef>
#include <ostream>

#include "annulus/alpha_solver.hpp"
#include "annulus/types.hpp"

namespace annulus {

/// Validates, gates on the Nitsche bound, and solves for alpha (bisection for
/// lambda != 1, closed form for lambda == 1).
ExtremalSolution solve_extremal(const AnnulusPair& annuli, const EnergyParams& params,
                                const AlphaSolveOptions& options = {});

/// Closed-form modulus of the power-branch extremal map at radius t, for any
/// admissible alpha and without range checks:
///
///   2^e (1 + s)^e t^(b/a) / [(1 + s)^2 - t^(2 (lambda-1) b/a) alpha/b^2]^e,
///   s = sqrt(1 + alpha/b^2), e = 1/(lambda - 1).
///
/// Throws DegenerateDenominator when the bracket is not positive.
double extremal_modulus(double alpha, double t, const EnergyParams& params);

/// Target radius implied by (alpha, r): the modulus above evaluated at t = r.
double target_radius_from_alpha(double alpha, double r_domain, const EnergyParams& params);

/// H(t) on [1, r]; t^(ln R / ln r) on the lambda == 1 branch. H(1) is exactly 1.
double extremal_profile(const ExtremalSolution& solution, double t);

/// alpha y^(2 lambda - 2) + b^2 for y in [1, R], written as
///   (alpha - alpha_min) y^(2 lambda - 2) - b^2 expm1((2 lambda - 2)(ln y - x0)),
/// x0 = ln R for lambda > 1 and 0 otherwise. Both terms are nonnegative, so the
/// value keeps full relative accuracy where it approaches zero.
double slope_radicand(const ExtremalSolution& solution, double y);

/// H'(t) = sqrt(alpha H^(2 lambda) + b^2 H^2) / (a t).
double extremal_derivative(const ExtremalSolution& solution, double t);

/// t(y) = exp(int_1^y a / sqrt(alpha s^(2 lambda) + b^2 s^2) ds) by tanh-sinh
/// quadrature; tolerates the integrable endpoint singularity at alpha_min.
double t_of_y(const ExtremalSolution& solution, double y);

/// H^{-1}(rho) by bracketed root finding on H over [1, r].
double inverse_profile(const ExtremalSolution& solution, double rho);

/// w = H(|z|) e^{i(arg z + beta)}; the rotation family of minimizers.
std::complex<double> full_map(const ExtremalSolution& solution, double beta,
                              std::complex<double> z);

/// H sampled on an n-node log grid with both endpoints pinned exactly.
RadialProfile sample_profile(const ExtremalSolution& solution, std::size_t n);

/// CSV with header `t,H,Hdot`, 17 significant digits.
void write_profile_csv(std::ostream& out, const ExtremalSolution& solution, std::size_t n);

}  // namespace annulus
