#include "annulus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "annulus/error.hpp"
#include "annulus/extremal_map.hpp"
#include "annulus/rng.hpp"

namespace annulus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kArmijo = 1e-4;

// Per-element integrand F(t, H, P) = a^2 t P^2 H^(-2 lambda) + (b^2/t) H^(2-2 lambda)
// and its partial derivatives.
struct ElementTerms {
  double f, f_h, f_p, f_hh, f_hp, f_pp;
};

ElementTerms element_terms(const EnergyParams& p, double t, double h, double slope) {
  const double a2 = p.a * p.a;
  const double b2 = p.b * p.b;
  const double lam = p.lambda;
  const double h_m2l = std::pow(h, -2.0 * lam);
  const double h_2m2l = std::pow(h, 2.0 - 2.0 * lam);
  const double slope2 = slope * slope;
  ElementTerms e{};
  e.f = a2 * t * slope2 * h_m2l + b2 / t * h_2m2l;
  e.f_h = -2.0 * lam * a2 * t * slope2 * h_m2l / h + (2.0 - 2.0 * lam) * b2 / t * h_2m2l / h;
  e.f_p = 2.0 * a2 * t * slope * h_m2l;
  e.f_hh = 2.0 * lam * (2.0 * lam + 1.0) * a2 * t * slope2 * h_m2l / (h * h) +
           (2.0 - 2.0 * lam) * (1.0 - 2.0 * lam) * b2 / t * h_2m2l / (h * h);
  e.f_hp = -4.0 * lam * a2 * t * slope * h_m2l / h;
  e.f_pp = 2.0 * a2 * t * h_m2l;
  return e;
}

void require_pinned_monotone(const DiscreteProblem& problem, std::span<const double> values) {
  if (values.size() != problem.n()) {
    throw Error(ErrorCode::MonotonicityViolation,
                fmt::format("profile has {} values, grid has {}", values.size(), problem.n()));
  }
  if (values.front() != 1.0 || values.back() != problem.annuli().r_target) {
    throw Error(ErrorCode::MonotonicityViolation, "profile endpoints are not pinned to 1 and R");
  }
  if (!strictly_increasing(values)) {
    throw Error(ErrorCode::MonotonicityViolation, "profile is not strictly increasing");
  }
}

double energy_unchecked(const DiscreteProblem& problem, std::span<const double> values) {
  const auto& t = problem.t_grid();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double dt = t[i + 1] - t[i];
    const double tm = 0.5 * (t[i] + t[i + 1]);
    const double hm = 0.5 * (values[i] + values[i + 1]);
    const double slope = (values[i + 1] - values[i]) / dt;
    sum += dt * element_terms(problem.params(), tm, hm, slope).f;
  }
  return kTwoPi * sum;
}

// Solves the symmetric tridiagonal system T x = rhs by LDL^T. Returns false
// when a pivot is not positive (T not positive definite).
bool solve_tridiagonal_spd(std::span<const double> diag, std::span<const double> off,
                           std::span<const double> rhs, std::vector<double>& x) {
  const std::size_t m = diag.size();
  std::vector<double> d(m), l(m, 0.0);
  x.assign(rhs.begin(), rhs.end());
  d[0] = diag[0];
  if (!(d[0] > 0.0)) return false;
  for (std::size_t i = 1; i < m; ++i) {
    l[i] = off[i - 1] / d[i - 1];
    d[i] = diag[i] - l[i] * off[i - 1];
    if (!(d[i] > 0.0)) return false;
    x[i] -= l[i] * x[i - 1];
  }
  x[m - 1] /= d[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    x[i] = x[i] / d[i] - l[i + 1] * x[i + 1];
  }
  return true;
}

}  // namespace

DiscreteProblem DiscreteProblem::create(const AnnulusPair& annuli, const EnergyParams& params,
                                        std::size_t n, double tol, std::uint64_t seed) {
  validate(annuli, params);
  if (n < 8) throw Error(ErrorCode::InvalidArgument, fmt::format("n={} < 8", n));
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  return DiscreteProblem(annuli, params, log_grid(annuli.r_domain, n), tol, seed);
}

double discrete_energy(const DiscreteProblem& problem, std::span<const double> values) {
  require_pinned_monotone(problem, values);
  return energy_unchecked(problem, values);
}

DiscreteDerivatives discrete_derivatives(const DiscreteProblem& problem,
                                         std::span<const double> values) {
  const auto& t = problem.t_grid();
  const std::size_t n = t.size();
  if (values.size() != n) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  DiscreteDerivatives out;
  out.gradient.assign(n, 0.0);
  out.diagonal.assign(n, 0.0);
  out.off_diagonal.assign(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = t[i + 1] - t[i];
    const double tm = 0.5 * (t[i] + t[i + 1]);
    const double hm = 0.5 * (values[i] + values[i + 1]);
    const double slope = (values[i + 1] - values[i]) / dt;
    const auto e = element_terms(problem.params(), tm, hm, slope);
    const double c = kTwoPi * dt;
    // dH_mid/dH_i = 1/2, dP/dH_i = -1/dt, dP/dH_{i+1} = 1/dt
    out.gradient[i] += c * (0.5 * e.f_h - e.f_p / dt);
    out.gradient[i + 1] += c * (0.5 * e.f_h + e.f_p / dt);
    out.diagonal[i] += c * (0.25 * e.f_hh - e.f_hp / dt + e.f_pp / (dt * dt));
    out.diagonal[i + 1] += c * (0.25 * e.f_hh + e.f_hp / dt + e.f_pp / (dt * dt));
    out.off_diagonal[i] += c * (0.25 * e.f_hh - e.f_pp / (dt * dt));
  }
  return out;
}

std::vector<double> isotonic_projection(std::span<const double> values, double lo, double hi) {
  // Blocks of pooled values: (mean, count).
  std::vector<double> means;
  std::vector<std::size_t> counts;
  for (double v : values) {
    means.push_back(v);
    counts.push_back(1);
    while (means.size() > 1 && means[means.size() - 2] > means.back()) {
      const std::size_t c1 = counts[counts.size() - 2];
      const std::size_t c2 = counts.back();
      const double merged =
          (means[means.size() - 2] * static_cast<double>(c1) + means.back() * static_cast<double>(c2)) /
          static_cast<double>(c1 + c2);
      means.pop_back();
      counts.pop_back();
      means.back() = merged;
      counts.back() = c1 + c2;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t b = 0; b < means.size(); ++b) {
    out.insert(out.end(), counts[b], std::clamp(means[b], lo, hi));
  }
  return out;
}

OracleResult minimize(const DiscreteProblem& problem, std::optional<std::vector<double>> start,
                      std::size_t max_iterations) {
  const auto& t = problem.t_grid();
  const std::size_t n = t.size();
  const double r = problem.annuli().r_domain;
  const double R = problem.annuli().r_target;

  std::vector<double> h;
  if (start) {
    h = std::move(*start);
  } else {
    const double exponent = std::log(R) / std::log(r);
    h.resize(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = std::exp(exponent * std::log(t[i]));
  }
  if (h.size() != n) throw Error(ErrorCode::InvalidArgument, "start profile has wrong size");
  h.front() = 1.0;
  h.back() = R;
  const std::vector<double> initial = h;

  OracleResult result;
  double energy = discrete_energy(problem, h);
  result.energy_history.push_back(energy);

  // Dual cell widths turn gradient entries into pointwise EL residuals.
  std::vector<double> cell(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) cell[i] = 0.5 * (t[i + 1] - t[i - 1]);

  const std::size_t m = n - 2;
  std::vector<double> step(m), trial(n);
  bool converged = false;
  std::size_t it = 0;
  for (; it < max_iterations; ++it) {
    const auto d = discrete_derivatives(problem, h);
    double residual = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      residual = std::max(residual, std::abs(d.gradient[i]) / cell[i]);
    }
    if (residual <= problem.tol() * std::max(1.0, energy)) {
      converged = true;
      break;
    }

    std::span<const double> g(d.gradient.data() + 1, m);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = -g[i];
    const bool newton = solve_tridiagonal_spd(std::span(d.diagonal).subspan(1, m),
                                              std::span(d.off_diagonal).subspan(1, m - 1), rhs,
                                              step);
    if (!newton) {
      for (std::size_t i = 0; i < m; ++i) {
        const double scale = d.diagonal[i + 1] > 0.0 ? d.diagonal[i + 1] : cell[i + 1];
        step[i] = -g[i] / scale;
      }
    }

    bool accepted = false;
    bool any_monotone = false;
    double max_step = 0.0;
    for (double s : step) max_step = std::max(max_step, std::abs(s));
    for (double scale = 1.0; scale > 1e-14; scale *= 0.5) {
      for (std::size_t i = 0; i < m; ++i) trial[i + 1] = h[i + 1] + scale * step[i];
      trial.front() = 1.0;
      trial.back() = R;
      trial = isotonic_projection(trial, 1.0, R);
      trial.front() = 1.0;
      trial.back() = R;
      if (!strictly_increasing(trial)) continue;
      any_monotone = true;
      double predicted = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) predicted += d.gradient[i] * (trial[i] - h[i]);
      const double trial_energy = energy_unchecked(problem, trial);
      if (trial_energy <= energy + kArmijo * std::min(0.0, predicted)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!any_monotone) {
        throw Error(ErrorCode::MonotonicityLost,
                    fmt::format("projection left ties at iteration {}", it));
      }
      // Energy differences are at rounding level once the Newton step is tiny.
      if (max_step <= 1e-10 * R) {
        converged = true;
        break;
      }
      throw Error(ErrorCode::NoConvergence,
                  fmt::format("line search failed at iteration {} (residual {})", it, residual));
    }
    double motion = 0.0;
    for (std::size_t i = 0; i < n; ++i) motion = std::max(motion, std::abs(trial[i] - h[i]));
    h.swap(trial);
    energy = energy_unchecked(problem, h);
    result.energy_history.push_back(energy);
    if (motion <= 1e-14 * R) {
      ++it;
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                fmt::format("oracle hit {} iterations without converging", max_iterations));
  }

  result.iterations = it;
  result.energy = energy;
  for (std::size_t i = 0; i < n; ++i) {
    result.max_motion = std::max(result.max_motion, std::abs(h[i] - initial[i]));
  }
  result.profile.t = t;
  result.profile.values = std::move(h);
  return result;
}

std::vector<double> perturbation_sweep(const DiscreteProblem& problem,
                                       const ExtremalSolution& solution, std::size_t count,
                                       double magnitude) {
  const auto& annuli = problem.annuli();
  const auto& params = problem.params();
  if (solution.annuli().r_domain != annuli.r_domain ||
      solution.annuli().r_target != annuli.r_target || solution.params().a != params.a ||
      solution.params().b != params.b || solution.params().lambda != params.lambda) {
    throw Error(ErrorCode::InvalidArgument, "solution does not match the discrete problem");
  }
  if (!(magnitude >= 0.0)) throw Error(ErrorCode::InvalidArgument, "magnitude must be >= 0");

  const auto& t = problem.t_grid();
  const std::size_t n = t.size();
  std::vector<double> base(n), s(n);
  const double log_r = std::log(annuli.r_domain);
  for (std::size_t i = 0; i < n; ++i) {
    base[i] = extremal_profile(solution, t[i]);
    s[i] = std::log(t[i]) / log_r;
  }
  base.front() = 1.0;
  base.back() = annuli.r_target;
  s.front() = 0.0;
  s.back() = 1.0;
  const double base_energy = discrete_energy(problem, base);

  Lcg64 rng(problem.seed());
  std::vector<double> deltas;
  deltas.reserve(count);
  std::vector<double> perturbed(n);
  for (std::size_t k = 0; k < count; ++k) {
    const double half_width = rng.uniform(0.1, 0.3);
    const double center = rng.uniform(half_width, 1.0 - half_width);
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (s[i] - center) / half_width;
      double bump = 0.0;
      if (std::abs(u) < 1.0) {
        const double c = std::cos(0.5 * std::numbers::pi * u);
        bump = magnitude * sign * c * c;
      }
      perturbed[i] = base[i] + bump;
    }
    if (!strictly_increasing(perturbed)) {
      throw Error(ErrorCode::MonotonicityViolation,
                  fmt::format("perturbation {} (magnitude {}) breaks monotonicity", k, magnitude));
    }
    deltas.push_back(discrete_energy(problem, perturbed) - base_energy);
  }
  return deltas;
}

std::string to_json(const OracleResult& result, double sup_norm_gap) {
  nlohmann::json j;
  j["n"] = result.profile.size();
  j["iterations"] = result.iterations;
  j["energy"] = result.energy;
  j["sup_norm_gap_to_closed_form"] = sup_norm_gap;
  return j.dump();
}

}  // namespace annulus
