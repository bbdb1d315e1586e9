#include "annulus/polar_field.hpp"

#include <cmath>
#include <numbers>

#include "annulus/error.hpp"

namespace annulus {

PolarField sample_polar_field(const AnnulusPair& annuli, const FieldFunction& field,
                              const PolarGridSpec& spec) {
  validate(annuli, EnergyParams{});
  if (spec.t_intervals < 2 || spec.t_intervals % 2 != 0 || spec.theta_nodes == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "polar grid needs an even number of t intervals and at least one theta node");
  }

  PolarField out;
  out.t = log_grid(annuli.r_domain, spec.t_intervals + 1);
  const double dx = std::log(annuli.r_domain) / static_cast<double>(spec.t_intervals);
  out.t_weights.resize(out.t.size());
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    double simpson = (i % 2 == 1) ? 4.0 : 2.0;
    if (i == 0 || i + 1 == out.t.size()) simpson = 1.0;
    out.t_weights[i] = simpson * dx / 3.0 * out.t[i];
  }
  const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(spec.theta_nodes);
  for (std::size_t j = 0; j < spec.theta_nodes; ++j) {
    out.theta.push_back(dtheta * static_cast<double>(j));
  }

  const std::size_t total = out.t.size() * out.theta.size();
  out.h.resize(total);
  out.h_normal.resize(total);
  out.h_tangential.resize(total);
  for (std::size_t i = 0; i < out.t.size(); ++i) {
    for (std::size_t j = 0; j < out.theta.size(); ++j) {
      const FieldSample s = field(out.t[i], out.theta[j]);
      const std::size_t idx = out.index(i, j);
      out.h[idx] = s.h;
      out.h_normal[idx] = s.h_normal;
      out.h_tangential[idx] = s.h_tangential;
    }
  }
  return out;
}

PolarField radial_polar_field(const AnnulusPair& annuli,
                              const std::function<double(double)>& modulus,
                              const std::function<double(double)>& derivative, double beta,
                              const PolarGridSpec& spec) {
  return sample_polar_field(
      annuli,
      [&](double t, double theta) {
        const std::complex<double> phase = std::polar(1.0, theta + beta);
        const double value = modulus(t);
        return FieldSample{value * phase, derivative(t) * phase,
                           std::complex<double>(0.0, value / t) * phase};
      },
      spec);
}

}  // namespace annulus
