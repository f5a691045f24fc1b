#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kantmfg/csv.hpp"
#include "kantmfg/finite_solver.hpp"

namespace kantmfg {

/// Bad flags, bad config keys, unknown scenarios: mapped to exit code 2.
class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A solver failed to reach its tolerance: mapped to exit code 3.
class ConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string scenario;        // one of scenario_names()
  std::vector<double> alphas;  // empty: scenario-specific default sweep
  int grid_n = 201;            // continuum quadrature points
  std::string xi = "flat";     // continuum efficiency profile id
  std::string out_dir = ".";
  bool write_csv = true;
  bool write_svg = false;
  unsigned seed = 12345;       // probe sampling seed
  SolverConfig solver;
};

/// Parses "start:stop:step" into an inclusive sweep.
std::vector<double> parse_sweep(const std::string& text);

/// Reads a key=value file ('#' starts a comment, blank lines skipped).
std::map<std::string, std::string> read_key_value_config(const std::string& path);

/// Applies config keys (scenario, sweep, alpha, grid_n, xi, out, format, seed,
/// tol, max_outer, damping, inner_tol, extragradient_step) onto `cfg`;
/// unknown keys raise UsageError.
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries);

struct SolveArtifacts {
  std::vector<CsvRow> rows;
  std::vector<std::string> written_files;
};

/// Computes equilibrium curves for the configured scenario across its alpha
/// sweep and writes equilibrium.csv / equilibrium.svg / metadata.json into
/// the output directory (per the configured formats).
SolveArtifacts run_solve(const RunConfig& cfg);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> lines;  // one "[ ok ]/[FAIL] name: detail" per check
};

/// Re-derives the configured scenario's equilibria with independent methods
/// and compares them (closed forms, grid search, variational residuals,
/// continuum/finite cross-validation).  Empty scenario: verify all.
VerifyOutcome run_verify(const RunConfig& cfg);

}  // namespace kantmfg
