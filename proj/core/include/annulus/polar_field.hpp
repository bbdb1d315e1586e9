#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "annulus/types.hpp"

namespace annulus {

/// Samples of a map h on a tensor polar grid over the domain annulus.
///
/// Values are stored row-major: index(i, j) addresses t[i], theta[j].
/// `h_normal` = h_t and `h_tangential` = h_theta / t. The t nodes carry their
/// own quadrature weights because grid quadrature needs a rule in t; theta is
/// uniform on [0, 2 pi) and integrated with the periodic trapezoidal rule.
struct PolarField {
  std::vector<double> t;
  std::vector<double> t_weights;
  std::vector<double> theta;
  std::vector<std::complex<double>> h;
  std::vector<std::complex<double>> h_normal;
  std::vector<std::complex<double>> h_tangential;

  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * theta.size() + j; }
  bool has_derivatives() const noexcept {
    return h_normal.size() == h.size() && h_tangential.size() == h.size() && !h.empty();
  }
};

struct PolarGridSpec {
  std::size_t t_intervals = 512;  // even; log-spaced, so t_intervals + 1 rings
  std::size_t theta_nodes = 64;
};

struct FieldSample {
  std::complex<double> h;
  std::complex<double> h_normal;
  std::complex<double> h_tangential;
};

using FieldFunction = std::function<FieldSample(double t, double theta)>;

/// Samples an arbitrary field. The t nodes are log-spaced and include the
/// boundary rings t = 1 and t = r_domain; their weights are composite Simpson
/// weights in x = ln t times the Jacobian dt/dx = t.
PolarField sample_polar_field(const AnnulusPair& annuli, const FieldFunction& field,
                              const PolarGridSpec& spec = {});

/// Samples the radial map H(t) e^{i(theta + beta)} given H and its derivative.
PolarField radial_polar_field(const AnnulusPair& annuli,
                              const std::function<double(double)>& modulus,
                              const std::function<double(double)>& derivative, double beta,
                              const PolarGridSpec& spec = {});

}  // namespace annulus
