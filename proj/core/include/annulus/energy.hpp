#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "annulus/polar_field.hpp"
#include "annulus/types.hpp"

namespace annulus {

enum class EnergyMethod { ClosedForm, RadialQuadrature, GridQuadrature };

std::string_view to_string(EnergyMethod method) noexcept;

struct EnergyReport {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::ClosedForm;
  double est_error = 0.0;
};

/// {"value": ..., "method": "...", "est_error": ...}
std::string to_json(const EnergyReport& report);

/// A radial map t -> H(t) e^{i theta} given by evaluators for H and H'.
struct RadialMap {
  std::function<double(double)> modulus;
  std::function<double(double)> derivative;
};

RadialMap radial_map(const ExtremalSolution& solution);

/// E = 2 pi int_1^r (a^2 t^2 H'^2 + b^2 H^2) / (t H^(2 lambda)) dt by adaptive
/// Gauss-Kronrod in x = ln t. QuadratureFailure if the estimate exceeds 1e-10 relative.
EnergyReport radial_energy(const RadialMap& map, const AnnulusPair& annuli,
                           const EnergyParams& params);

/// Closed-form minimum energy of the solution's branch.
EnergyReport closed_form_energy(const ExtremalSolution& solution);

/// Tensor-product quadrature of (a^2 |h_N|^2 + b^2 |h_T|^2) / |h|^(2 lambda) over
/// the domain annulus with area element t dt dtheta.
EnergyReport grid_energy(const PolarField& field, const EnergyParams& params);

/// Weighted combined distortion of a sampled map h = rho e^{i Theta}:
/// (a^2 rho^2 |grad Theta|^2 + b^2 |grad rho|^2) / (J |z|^(2 lambda)).
/// The gradients come from the supplied h_N and h_T samples.
EnergyReport distortion_energy(const PolarField& field, const EnergyParams& params);

/// Radial reduction of the distortion:
/// 2 pi int_1^r (a^2 H^2 / H' + b^2 t^2 H') / (H t^(2 lambda)) dt.
EnergyReport distortion_energy(const RadialMap& map, const AnnulusPair& annuli,
                               const EnergyParams& params);

/// Energy of the inverse map f = H^{-1} over the target annulus,
/// 2 pi int_1^R (a^2 s^2 T'^2 + b^2 T^2) / (s T^(2 lambda)) ds with T from
/// root finding and T' = T a / sqrt(alpha s^(2 lambda) + b^2 s^2).
EnergyReport inverse_energy(const ExtremalSolution& solution);

}  // namespace annulus
