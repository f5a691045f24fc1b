#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "kantmfg/run.hpp"
#include "kantmfg/scenarios.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string scenario;
  double alpha = 0.0;
  std::string sweep;
  int grid_n = 201;
  std::string xi = "flat";
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned seed = 12345;
  double tol = 1e-10;
  int max_outer = 10000;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "key=value config file applied first");
  sub->add_option("--scenario", flags.scenario, "scenario name (see list-scenarios)");
  sub->add_option("--alpha", flags.alpha, "single cooperation level in [0, 1]");
  sub->add_option("--sweep", flags.sweep, "cooperation sweep as start:stop:step");
  sub->add_option("--grid-n", flags.grid_n, "continuum quadrature points");
  sub->add_option("--xi", flags.xi, "continuum efficiency profile: flat|linear|affine");
  sub->add_option("--out", flags.out_dir, "output directory");
  sub->add_option("--format", flags.format, "comma list of outputs: csv,svg");
  sub->add_option("--seed", flags.seed, "seed for sampled diagnostics");
  sub->add_option("--tol", flags.tol, "solver convergence tolerance");
  sub->add_option("--max-outer", flags.max_outer, "solver iteration cap");
}

kantmfg::RunConfig build_config(const CLI::App* sub, const CommonFlags& flags) {
  kantmfg::RunConfig cfg;
  if (sub->count("--config") > 0) {
    kantmfg::apply_config(cfg, kantmfg::read_key_value_config(flags.config_path));
  }
  // Explicit flags override config-file entries.
  if (sub->count("--scenario") > 0) cfg.scenario = flags.scenario;
  if (sub->count("--alpha") > 0) cfg.alphas = {flags.alpha};
  if (sub->count("--sweep") > 0) cfg.alphas = kantmfg::parse_sweep(flags.sweep);
  if (sub->count("--grid-n") > 0) cfg.grid_n = flags.grid_n;
  if (sub->count("--xi") > 0) cfg.xi = flags.xi;
  if (sub->count("--out") > 0) cfg.out_dir = flags.out_dir;
  if (sub->count("--format") > 0) {
    kantmfg::apply_config(cfg, {{"format", flags.format}});
  }
  if (sub->count("--seed") > 0) cfg.seed = flags.seed;
  if (sub->count("--tol") > 0) cfg.solver.tol = flags.tol;
  if (sub->count("--max-outer") > 0) cfg.solver.max_outer = flags.max_outer;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver for quadratic harvesting games in which each player "
               "imagines steering a virtual group of like-minded co-players"};
  app.require_subcommand(1);
  CommonFlags flags;

  CLI::App* solve = app.add_subcommand("solve", "compute equilibrium curves, write csv/svg");
  add_common_flags(solve, flags);
  CLI::App* verify =
      app.add_subcommand("verify", "re-derive equilibria with independent methods and compare");
  add_common_flags(verify, flags);
  CLI::App* list = app.add_subcommand("list-scenarios", "print available scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const std::string& name : kantmfg::scenario_names()) {
        std::printf("%s\n", name.c_str());
      }
      return 0;
    }
    if (solve->parsed()) {
      const kantmfg::SolveArtifacts artifacts = kantmfg::run_solve(build_config(solve, flags));
      for (const std::string& path : artifacts.written_files) {
        std::printf("wrote %s\n", path.c_str());
      }
      std::printf("%zu rows\n", artifacts.rows.size());
      return 0;
    }
    if (verify->parsed()) {
      const kantmfg::VerifyOutcome outcome = kantmfg::run_verify(build_config(verify, flags));
      for (const std::string& line : outcome.lines) std::printf("%s\n", line.c_str());
      std::printf("%s\n", outcome.ok ? "verify: all checks passed" : "verify: FAILURES");
      return outcome.ok ? 0 : 3;
    }
  } catch (const kantmfg::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const kantmfg::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
