#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace annulus::cli {

enum class Command { Check, Solve, Energy, Verify, Oracle, Sweep, Export };
enum class OutputFormat { Json, Csv, Table };

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kValidation = 2,
  kInfeasible = 3,
  kNumerical = 4,
};

struct RunConfig {
  Command command = Command::Check;
  double r = 0.0;
  double R = 0.0;
  double a = 1.0;
  double b = 1.0;
  double lambda = 0.0;
  std::size_t n = 513;
  double tol = 1e-12;
  std::uint64_t seed = 42;
  std::optional<OutputFormat> output_format;  // unset: csv for sweep, json otherwise

  // oracle
  double oracle_tol = 1e-10;
  std::size_t perturbations = 100;
  double magnitude = 1e-3;

  // sweep: either a JSON Lines file or the Cartesian product of the lists
  std::string config_path;
  std::vector<double> r_list, R_list, a_list, b_list, lambda_list;
  std::size_t threads = 0;  // 0: hardware concurrency

  // export
  std::string output_path;  // empty: stdout
  bool trajectory = false;
};

/// Throws annulus::Error(InvalidArgument) unless n >= 8 and tol in (0, 1e-2].
void validate_run_config(const RunConfig& config);

/// Executes one command; returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (subcommand first) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace annulus::cli
