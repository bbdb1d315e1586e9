#include "run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "annulus/annulus.hpp"

namespace annulus::cli {
namespace {

using Json = nlohmann::ordered_json;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shortest representation that parses back to the same double.
std::string format_number(double v) { return fmt::format("{}", v); }

std::string format_scalar(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

// Emits a flat record in the requested format.
void emit_record(std::ostream& out, const Json& record, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      out << record.dump() << '\n';
      break;
    case OutputFormat::Csv: {
      std::string header, row;
      for (const auto& [key, value] : record.items()) {
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + format_scalar(value);
      }
      out << header << '\n' << row << '\n';
      break;
    }
    case OutputFormat::Table: {
      std::size_t width = 0;
      for (const auto& [key, value] : record.items()) width = std::max(width, key.size());
      for (const auto& [key, value] : record.items()) {
        out << fmt::format("{:<{}}  {}\n", key, width, format_scalar(value));
      }
      break;
    }
  }
}

Json config_fields(const RunConfig& c) {
  Json j;
  j["r"] = c.r;
  j["R"] = c.R;
  j["a"] = c.a;
  j["b"] = c.b;
  j["lambda"] = c.lambda;
  return j;
}

AnnulusPair annuli_of(const RunConfig& c) { return AnnulusPair{c.r, c.R}; }
EnergyParams params_of(const RunConfig& c) { return EnergyParams{c.a, c.b, c.lambda}; }

Json feasibility_record(const RunConfig& c, const FeasibilityReport& report) {
  Json j{{"command", "check"}};
  j.update(config_fields(c));
  j["feasible"] = report.feasible;
  j["bound"] = report.bound;
  j["margin"] = report.margin;
  return j;
}

// Returns kOk when feasible; otherwise prints the bound and returns kInfeasible.
int gate_feasibility(const RunConfig& c, std::ostream& out, std::ostream& err,
                     OutputFormat format) {
  const auto report = check_feasibility(annuli_of(c), params_of(c));
  if (report.feasible) return kOk;
  emit_record(out, feasibility_record(c, report), format);
  err << fmt::format("infeasible: r = {} exceeds the bound {}\n", format_number(c.r),
                     format_number(report.bound));
  return kInfeasible;
}

ExtremalSolution solve(const RunConfig& c) {
  return solve_extremal(annuli_of(c), params_of(c), AlphaSolveOptions{c.tol, 200});
}

int run_check(const RunConfig& c, std::ostream& out, std::ostream& err, OutputFormat format) {
  const auto report = check_feasibility(annuli_of(c), params_of(c));
  emit_record(out, feasibility_record(c, report), format);
  if (!report.feasible) {
    err << fmt::format("infeasible: r = {} exceeds the bound {}\n", format_number(c.r),
                       format_number(report.bound));
    return kInfeasible;
  }
  return kOk;
}

int run_solve(const RunConfig& c, std::ostream& out, OutputFormat format) {
  const auto annuli = annuli_of(c);
  const auto params = params_of(c);
  Json j{{"command", "solve"}};
  j.update(config_fields(c));
  if (is_lambda_one(c.lambda)) {
    const auto solution = solve(c);
    const double endpoint = std::pow(c.r, std::log(c.R) / std::log(c.r));
    j["alpha"] = solution.alpha();
    j["branch"] = std::string(to_string(solution.branch()));
    j["phi_residual"] = std::abs(endpoint - c.R);
    j["iterations"] = 0;
    j["endpoint_error"] = std::abs(endpoint - c.R);
    j["at_feasibility_boundary"] = false;
  } else {
    const auto s = solve_alpha(annuli, params, AlphaSolveOptions{c.tol, 200});
    const auto solution = ExtremalSolution::create(annuli, params, s.alpha);
    j["alpha"] = s.alpha;
    j["branch"] = std::string(to_string(solution.branch()));
    j["phi_residual"] = s.phi_residual;
    j["iterations"] = s.iterations;
    j["endpoint_error"] =
        std::abs(target_radius_from_alpha(s.alpha, c.r, params) - c.R);
    j["at_feasibility_boundary"] = solution.at_feasibility_boundary();
  }
  emit_record(out, j, format);
  return kOk;
}

int run_energy(const RunConfig& c, std::ostream& out, OutputFormat format) {
  const auto solution = solve(c);
  const auto closed = closed_form_energy(solution);
  const auto quad = radial_energy(radial_map(solution), annuli_of(c), params_of(c));
  Json j{{"command", "energy"}};
  j.update(config_fields(c));
  j["alpha"] = solution.alpha();
  j["closed_form"] = closed.value;
  j["quadrature"] = quad.value;
  j["quadrature_est_error"] = quad.est_error;
  j["relative_gap"] = std::abs(closed.value - quad.value) / std::abs(closed.value);
  emit_record(out, j, format);
  return kOk;
}

std::string status_of(const VerifyCheck& check) {
  if (check.skipped) return "skip";
  return check.passed ? "pass" : "fail";
}

int run_verify(const RunConfig& c, std::ostream& out, OutputFormat format) {
  const auto solution = solve(c);
  const auto report = verify_solution(solution);
  switch (format) {
    case OutputFormat::Json: {
      Json j{{"command", "verify"}};
      j.update(config_fields(c));
      j["alpha"] = solution.alpha();
      Json checks = Json::array();
      for (const auto& check : report.checks) {
        checks.push_back(Json{{"name", check.name},
                              {"value", check.value},
                              {"threshold", check.threshold},
                              {"status", status_of(check)}});
      }
      j["checks"] = std::move(checks);
      j["passed"] = report.all_passed();
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "name,value,threshold,status\n";
      for (const auto& check : report.checks) {
        out << fmt::format("{},{},{},{}\n", check.name, format_number(check.value),
                           format_number(check.threshold), status_of(check));
      }
      break;
    case OutputFormat::Table:
      for (const auto& check : report.checks) {
        out << fmt::format("{:<28} {:<24} <= {:<8} {}\n", check.name, format_number(check.value),
                           check.threshold, status_of(check));
      }
      out << (report.all_passed() ? "all checks passed\n" : "some checks failed\n");
      break;
  }
  return report.all_passed() ? kOk : kCheckFailed;
}

int run_oracle(const RunConfig& c, std::ostream& out, OutputFormat format) {
  const auto solution = solve(c);
  const auto problem =
      DiscreteProblem::create(annuli_of(c), params_of(c), c.n, c.oracle_tol, c.seed);
  const auto result = minimize(problem);
  const auto& t = problem.t_grid();
  std::vector<double> exact(t.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    exact[i] = extremal_profile(solution, t[i]);
    gap = std::max(gap, std::abs(result.profile.values[i] - exact[i]));
  }
  exact.back() = c.R;
  const double closed = closed_form_energy(solution).value;
  const double discretization = std::abs(discrete_energy(problem, exact) - closed);
  const auto deltas = perturbation_sweep(problem, solution, c.perturbations, c.magnitude);
  const double min_delta =
      deltas.empty() ? 0.0 : *std::min_element(deltas.begin(), deltas.end());

  const bool passed = gap <= 1e-3 && result.energy - closed <= 1e-4 &&
                      closed - result.energy <= 2.0 * discretization + 1e-9 && min_delta >= -1e-9;
  Json j{{"command", "oracle"}};
  j.update(config_fields(c));
  j.update(Json::parse(to_json(result, gap)));
  j["closed_form_energy"] = closed;
  j["discretization_error"] = discretization;
  j["perturbations"] = deltas.size();
  j["magnitude"] = c.magnitude;
  j["min_delta"] = min_delta;
  j["passed"] = passed;
  emit_record(out, j, format);
  return passed ? kOk : kCheckFailed;
}

int run_export(const RunConfig& c, std::ostream& out) {
  const auto solution = solve(c);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output_path.empty()) {
    file.open(c.output_path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + c.output_path);
    sink = &file;
  }
  if (c.trajectory) {
    write_trajectory_csv(*sink, shoot(solution.alpha(), params_of(c), c.r, ShootOptions{1e-12, 1e-12, c.n}));
  } else {
    write_profile_csv(*sink, solution, c.n);
  }
  return kOk;
}

// ---- sweep ----

std::vector<RunConfig> sweep_records(const RunConfig& c) {
  std::vector<RunConfig> records;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + c.config_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{}:{}: {}", c.config_path, line_no, e.what()));
      }
      if (!j.is_object() || !j.contains("r") || !j.contains("R")) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{}:{}: expected an object with r and R", c.config_path, line_no));
      }
      RunConfig rec = c;
      try {
        rec.r = j.at("r").get<double>();
        rec.R = j.at("R").get<double>();
        rec.a = j.value("a", c.a);
        rec.b = j.value("b", c.b);
        rec.lambda = j.value("lambda", c.lambda);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("{}:{}: {}", c.config_path, line_no, e.what()));
      }
      records.push_back(rec);
    }
    return records;
  }
  auto or_default = [](const std::vector<double>& list, double fallback) {
    return list.empty() ? std::vector<double>{fallback} : list;
  };
  if (c.r_list.empty() || c.R_list.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep needs --config or --r and --R lists");
  }
  for (double r : c.r_list)
    for (double R : c.R_list)
      for (double a : or_default(c.a_list, c.a))
        for (double b : or_default(c.b_list, c.b))
          for (double lambda : or_default(c.lambda_list, c.lambda)) {
            RunConfig rec = c;
            rec.r = r;
            rec.R = R;
            rec.a = a;
            rec.b = b;
            rec.lambda = lambda;
            records.push_back(rec);
          }
  return records;
}

struct SweepRow {
  bool feasible = false;
  double alpha = kNaN;
  double energy_closed = kNaN;
  double energy_quad = kNaN;
  double el_residual_max = kNaN;
  bool failed = false;
  std::string message;
};

SweepRow sweep_one(const RunConfig& c) {
  SweepRow row;
  try {
    row.feasible = check_feasibility(annuli_of(c), params_of(c)).feasible;
    if (!row.feasible) return row;
    const auto solution = solve(c);
    row.alpha = solution.alpha();
    row.energy_closed = closed_form_energy(solution).value;
    row.energy_quad = radial_energy(radial_map(solution), annuli_of(c), params_of(c)).value;
    row.el_residual_max = max_normalized_el_residual(solution, 100);
  } catch (const Error& e) {
    row.failed = true;
    row.message = e.what();
  }
  return row;
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err, OutputFormat format) {
  const auto records = sweep_records(c);
  for (const auto& rec : records) validate(annuli_of(rec), params_of(rec));

  std::vector<SweepRow> rows(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) rows[i] = sweep_one(records[i]);
  };
  std::size_t threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(records.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  int status = kOk;
  if (format == OutputFormat::Json) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      Json j = config_fields(records[i]);
      j["feasible"] = rows[i].feasible;
      j["alpha"] = rows[i].alpha;
      j["energy_closed"] = rows[i].energy_closed;
      j["energy_quad"] = rows[i].energy_quad;
      j["el_residual_max"] = rows[i].el_residual_max;
      out << j.dump() << '\n';
    }
  } else {
    out << "r,R,a,b,lambda,feasible,alpha,energy_closed,energy_quad,el_residual_max\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& rec = records[i];
      const auto& row = rows[i];
      out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", format_number(rec.r),
                         format_number(rec.R), format_number(rec.a), format_number(rec.b),
                         format_number(rec.lambda), row.feasible ? "true" : "false",
                         format_number(row.alpha), format_number(row.energy_closed),
                         format_number(row.energy_quad), format_number(row.el_residual_max));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].failed) {
      err << fmt::format("record {}: {}\n", i, rows[i].message);
      status = kNumerical;
    }
  }
  return status;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const OutputFormat format = c.output_format.value_or(
      c.command == Command::Sweep ? OutputFormat::Csv : OutputFormat::Json);
  if (c.command == Command::Sweep) return run_sweep(c, out, err, format);

  validate(annuli_of(c), params_of(c));
  if (c.command == Command::Check) return run_check(c, out, err, format);
  if (int gate = gate_feasibility(c, out, err, format); gate != kOk) return gate;
  switch (c.command) {
    case Command::Solve: return run_solve(c, out, format);
    case Command::Energy: return run_energy(c, out, format);
    case Command::Verify: return run_verify(c, out, format);
    case Command::Oracle: return run_oracle(c, out, format);
    case Command::Export: return run_export(c, out);
    default: break;
  }
  return kOk;
}

}  // namespace

void validate_run_config(const RunConfig& config) {
  if (config.n < 8) throw Error(ErrorCode::InvalidArgument, fmt::format("n = {} < 8", config.n));
  if (!(config.tol > 0.0 && config.tol <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("tol = {} outside (0, 1e-2]", config.tol));
  }
  if (!(config.oracle_tol > 0.0 && config.oracle_tol <= 1e-2)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("oracle tol = {} outside (0, 1e-2]", config.oracle_tol));
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_run_config(config);
    return dispatch(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::Infeasible) return kInfeasible;
    return is_validation_error(e.code()) ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal radial maps between annuli for the weighted combined energy"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<double> r_values, R_values, a_values, b_values, lambda_values;
  std::string format_name;

  const std::vector<std::pair<std::string, Command>> commands = {
      {"check", Command::Check},   {"solve", Command::Solve},   {"energy", Command::Energy},
      {"verify", Command::Verify}, {"oracle", Command::Oracle}, {"sweep", Command::Sweep},
      {"export", Command::Export}};
  const std::vector<std::string> descriptions = {
      "Feasibility of r against the bound for (R, a, b, lambda)",
      "Solve for the first-integral constant alpha",
      "Closed-form and quadrature energy of the extremal map",
      "Residual, first-integral, shooting and duality checks",
      "Brute-force discrete minimizer and perturbation sweep",
      "Evaluate a grid of configurations (CSV or JSON Lines)",
      "Write the extremal profile (or shooting trajectory) as CSV"};

  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    auto* sub = app.add_subcommand(commands[k].first, descriptions[k]);
    const bool sweep = commands[k].second == Command::Sweep;
    auto* r_opt = sub->add_option("--r", r_values, "domain outer radius")->delimiter(',');
    auto* R_opt = sub->add_option("--R", R_values, "target outer radius")->delimiter(',');
    sub->add_option("--a", a_values, "normal weight (default 1)")->delimiter(',');
    sub->add_option("--b", b_values, "tangential weight (default 1)")->delimiter(',');
    sub->add_option("--lambda", lambda_values, "exponent (default 0)")->delimiter(',');
    if (!sweep) {
      r_opt->required();
      R_opt->required();
    }
    sub->add_option("--tol", config.tol, "alpha solver relative tolerance")->capture_default_str();
    sub->add_option("--n", config.n, "grid nodes (oracle, export)")->capture_default_str();
    sub->add_option("--seed", config.seed, "perturbation RNG seed")->capture_default_str();
    sub->add_option("--format", format_name, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    if (commands[k].second == Command::Oracle) {
      sub->add_option("--oracle-tol", config.oracle_tol, "minimizer residual tolerance")
          ->capture_default_str();
      sub->add_option("--perturbations", config.perturbations, "number of random bumps")
          ->capture_default_str();
      sub->add_option("--magnitude", config.magnitude, "bump sup-norm")->capture_default_str();
    }
    if (sweep) {
      sub->add_option("--config", config.config_path, "JSON Lines file of configurations");
      sub->add_option("--threads", config.threads, "worker threads (0: all cores)");
    }
    if (commands[k].second == Command::Export) {
      sub->add_option("--output", config.output_path, "CSV path (default stdout)");
      sub->add_flag("--trajectory", config.trajectory, "export the shooting trajectory");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k]->parsed()) config.command = commands[k].second;
  }
  if (format_name == "json") config.output_format = OutputFormat::Json;
  if (format_name == "csv") config.output_format = OutputFormat::Csv;
  if (format_name == "table") config.output_format = OutputFormat::Table;

  if (config.command == Command::Sweep) {
    config.r_list = r_values;
    config.R_list = R_values;
    config.a_list = a_values;
    config.b_list = b_values;
    config.lambda_list = lambda_values;
  } else {
    auto single = [&](const std::vector<double>& values, const char* name, double& slot) {
      if (values.empty()) return true;
      if (values.size() != 1) {
        err << fmt::format("error: --{} takes one value for this command\n", name);
        return false;
      }
      slot = values.front();
      return true;
    };
    if (!single(r_values, "r", config.r) || !single(R_values, "R", config.R) ||
        !single(a_values, "a", config.a) || !single(b_values, "b", config.b) ||
        !single(lambda_values, "lambda", config.lambda)) {
      return kValidation;
    }
  }
  return run(config, out, err);
}

}  // namespace annulus::cli
