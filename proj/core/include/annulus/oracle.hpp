#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "annulus/types.hpp"

namespace annulus {

/// Discretization of the radial energy over pinned monotone profiles on a
/// log-spaced grid with piecewise-linear H.
class DiscreteProblem {
 public:
  static DiscreteProblem create(const AnnulusPair& annuli, const EnergyParams& params,
                                std::size_t n = 513, double tol = 1e-10,
                                std::uint64_t seed = 42);

  const AnnulusPair& annuli() const noexcept { return annuli_; }
  const EnergyParams& params() const noexcept { return params_; }
  std::size_t n() const noexcept { return t_grid_.size(); }
  double tol() const noexcept { return tol_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<double>& t_grid() const noexcept { return t_grid_; }

 private:
  DiscreteProblem(const AnnulusPair& annuli, const EnergyParams& params, std::vector<double> grid,
                  double tol, std::uint64_t seed)
      : annuli_(annuli), params_(params), t_grid_(std::move(grid)), tol_(tol), seed_(seed) {}

  AnnulusPair annuli_;
  EnergyParams params_;
  std::vector<double> t_grid_;
  double tol_;
  std::uint64_t seed_;
};

/// 2 pi sum_i dt_i F(t_mid, H_mid, (H_{i+1} - H_i)/dt_i) with
/// F(t, H, P) = (a^2 t^2 P^2 + b^2 H^2) / (t H^(2 lambda)).
/// MonotonicityViolation unless H is pinned (1 .. R) and strictly increasing.
double discrete_energy(const DiscreteProblem& problem, std::span<const double> values);

/// Gradient and tridiagonal Hessian of discrete_energy with respect to all
/// nodal values (boundary rows included; callers drop them).
struct DiscreteDerivatives {
  std::vector<double> gradient;
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // (i, i+1) entries, size n-1
};

DiscreteDerivatives discrete_derivatives(const DiscreteProblem& problem,
                                         std::span<const double> values);

/// Least-squares projection onto non-decreasing sequences (pool adjacent
/// violators), then clamped to [lo, hi].
std::vector<double> isotonic_projection(std::span<const double> values, double lo, double hi);

struct OracleResult {
  RadialProfile profile;
  double energy = 0.0;
  std::size_t iterations = 0;
  std::vector<double> energy_history;  // energy before the first and after every step
  double max_motion = 0.0;             // sup |H_final - H_start|
};

/// Projected Newton on the tridiagonal Hessian with Armijo backtracking;
/// falls back to a scaled gradient step when the Hessian is not positive
/// definite. Starts from the power map t^(ln R / ln r) unless `start` is given.
OracleResult minimize(const DiscreteProblem& problem,
                      std::optional<std::vector<double>> start = std::nullopt,
                      std::size_t max_iterations = 200);

/// discrete_energy(base + delta_k) - discrete_energy(base) for k random
/// cos^2 bumps of sup-norm `magnitude`, pinned inside (1, r); base is the
/// closed-form extremal sampled on the problem grid.
std::vector<double> perturbation_sweep(const DiscreteProblem& problem,
                                       const ExtremalSolution& solution, std::size_t count,
                                       double magnitude);

/// {"n", "iterations", "energy", "sup_norm_gap_to_closed_form"}
std::string to_json(const OracleResult& result, double sup_norm_gap);

}  // namespace annulus
