#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace annulus {

/// Domain annulus {1 <= |z| <= r_domain} and target annulus {1 <= |w| <= r_target}.
struct AnnulusPair {
  double r_domain = 0.0;
  double r_target = 0.0;
};

/// Weights of the normal (a) and tangential (b) derivative terms and the
/// exponent of the 1/|w|^(2 lambda) metric factor.
struct EnergyParams {
  double a = 1.0;
  double b = 1.0;
  double lambda = 0.0;
};

struct Configuration {
  AnnulusPair annuli;
  EnergyParams params;
};

Configuration validate(const AnnulusPair& annuli, const EnergyParams& params);
void validate_params(const EnergyParams& params);

enum class Branch { LambdaNe1, LambdaEq1 };

std::string_view to_string(Branch branch) noexcept;

// Exact comparison: the two branches use different formulas.
constexpr bool is_lambda_one(double lambda) noexcept { return lambda == 1.0; }

inline constexpr double kNearLambdaOne = 1e-9;

/// Smallest admissible first-integral constant for lambda != 1:
/// -b^2 / R^(2(lambda-1)) when lambda > 1, -b^2 when lambda < 1.
double alpha_min(double r_target, double b, double lambda);

/// A solved (or explicitly parameterized) member of the radial extremal family.
///
/// For lambda != 1 the constant alpha must satisfy alpha >= alpha_min; for
/// lambda == 1 it is the value a^2 (ln R / ln r)^2 - b^2 and only the exponent
/// ln R / ln r enters the map.
class ExtremalSolution {
 public:
  static ExtremalSolution create(const AnnulusPair& annuli, const EnergyParams& params,
                                 double alpha);

  double alpha() const noexcept { return alpha_; }
  const EnergyParams& params() const noexcept { return params_; }
  const AnnulusPair& annuli() const noexcept { return annuli_; }
  Branch branch() const noexcept { return branch_; }

  /// True when alpha sits exactly on alpha_min (r equals the Nitsche bound).
  bool at_feasibility_boundary() const noexcept;

 private:
  ExtremalSolution(const AnnulusPair& annuli, const EnergyParams& params, double alpha,
                   Branch branch)
      : annuli_(annuli), params_(params), alpha_(alpha), branch_(branch) {}

  AnnulusPair annuli_;
  EnergyParams params_;
  double alpha_;
  Branch branch_;
};

/// Samples H(t) of an orientation-preserving radial map t -> H(t) e^{i theta}.
struct RadialProfile {
  std::vector<double> t;
  std::vector<double> values;

  std::size_t size() const noexcept { return t.size(); }
};

/// Throws MonotonicityViolation unless both arrays are strictly increasing,
/// equally sized, and pinned: t = 1..r_domain, values = 1..r_target exactly.
void check_profile(const RadialProfile& profile, const AnnulusPair& annuli);

/// n nodes t_i = exp(i ln(r) / (n-1)); the endpoints are exactly 1 and r.
std::vector<double> log_grid(double r, std::size_t n);

bool strictly_increasing(std::span<const double> xs) noexcept;

}  // namespace annulus
