#pragma once

#include <string>
#include <vector>

#include "annulus/types.hpp"

namespace annulus {

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool skipped = false;  // passed is true for skipped checks
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

/// Euler-Lagrange residual, closed-form first integral, shooting endpoint,
/// shooting drift, shooting vs closed form, closed form vs quadrature energy,
/// and distortion/inverse-energy duality. Duality is skipped at the
/// feasibility boundary where the distortion diverges.
VerifyReport verify_solution(const ExtremalSolution& solution);

}  // namespace annulus
