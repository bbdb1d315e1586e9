#pragma once

#include "annulus/types.hpp"

namespace annulus {

/// Largest domain radius r for which the radial minimizer exists:
/// (R^m + sqrt(R^(2m) - 1))^((a/b)/m) with m = |lambda - 1|, evaluated in the
/// log domain as exp((a/(b m)) acosh(R^m)). Returns +infinity for lambda == 1.
double nitsche_bound(double r_target, const EnergyParams& params);

struct FeasibilityReport {
  bool feasible = false;
  double bound = 0.0;
  double r_domain = 0.0;
  double margin = 0.0;  // bound - r; +inf when lambda == 1
};

/// r <= bound counts as feasible, including equality.
FeasibilityReport check_feasibility(const AnnulusPair& annuli, const EnergyParams& params);

}  // namespace annulus
