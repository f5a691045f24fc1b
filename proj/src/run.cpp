#include "kantmfg/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kantmfg/oracle.hpp"
#include "kantmfg/scenarios.hpp"
#include "kantmfg/svg_plot.hpp"

namespace kantmfg {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' expects a number, got '" + value + "'");
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double parsed = to_double(key, value);
  if (parsed != std::floor(parsed)) {
    throw UsageError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
  return static_cast<int>(parsed);
}

void require_known_scenario(const std::string& name) {
  const std::vector<std::string> names = scenario_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return;
  std::string known;
  for (const std::string& n : names) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw UsageError("unknown scenario '" + name + "' (known: " + known + ")");
}

std::vector<double> default_alphas(const std::string& scenario) {
  if (scenario.rfind("continuum", 0) == 0) return {0.0, 0.25, 0.5, 0.75, 1.0};
  return parse_sweep("0:1:0.1");
}

std::string alpha_label(double alpha) { return "alpha=" + format_g12(alpha); }

/// Realized per-type costs of a finite quadratic game when everyone follows
/// the per-type profile u.
Eigen::VectorXd realized_costs(const FiniteTypeSpace& space, const QuadraticFishingModel& model,
                               const Eigen::VectorXd& u) {
  const Eigen::VectorXd& p = space.distribution();
  double ubar = 0.0;
  for (int k = 0; k < space.count(); ++k) ubar += p(k) * model.efficiency(k) * u(k);
  Eigen::VectorXd costs(space.count());
  for (int k = 0; k < space.count(); ++k) {
    costs(k) = model.effort_weight(k) * u(k) * u(k) -
               (1.0 - ubar) * model.efficiency(k) * u(k);
  }
  return costs;
}

struct CheckRecorder {
  VerifyOutcome outcome;

  void value_below(const std::string& name, double value, double tolerance) {
    const bool pass = value < tolerance;
    record(pass, name, format_g12(value) + " (tolerance " + format_g12(tolerance) + ")");
  }
  void is_positive(const std::string& name, double value) {
    record(value > 0.0, name, format_g12(value) + " (must be positive)");
  }

 private:
  void record(bool pass, const std::string& name, const std::string& detail) {
    outcome.ok = outcome.ok && pass;
    outcome.lines.push_back(std::string(pass ? "[ ok ] " : "[FAIL] ") + name + ": " + detail);
  }
};

void solve_symmetric(const RunConfig& cfg, const std::vector<double>& alphas,
                     std::vector<CsvRow>& rows, std::vector<PlotSeries>& series) {
  PlotSeries kantian{"kantian", {}, {}};
  PlotSeries altruistic{"altruistic", {}, {}};
  PlotSeries nash{"nash", {}, {}};
  for (double alpha : alphas) {
    FiniteScenario scn = symmetric_fishing(alpha);
    const GameModel game = scn.model.game_model();
    auto [profile, report] =
        fixed_point_solve(scn.space, game, scn.group, scn.weights, scn.risk, cfg.solver);
    if (!report.converged) {
      throw ConvergenceError("symmetric_fishing: fixed point did not converge at " +
                             alpha_label(alpha));
    }
    const double u_k = profile.star(0);
    rows.push_back({"symmetric_fishing:kantian", alpha, 0.0, u_k, symmetric_cost(u_k),
                    "fixed_point", report.final_residual, report.iterations});
    kantian.x.push_back(alpha);
    kantian.y.push_back(u_k);

    const double u_a = altruistic_reference(alpha);
    rows.push_back({"symmetric_fishing:altruistic", alpha, 0.0, u_a, symmetric_cost(u_a),
                    "closed_form", 0.0, 0});
    altruistic.x.push_back(alpha);
    altruistic.y.push_back(u_a);

    const GroupMeasure none = GroupMeasure::zero(scn.space);
    auto [nash_profile, nash_report] =
        fixed_point_solve(scn.space, game, none, scn.weights, RiskFactor::mean(), cfg.solver);
    if (!nash_report.converged) {
      throw ConvergenceError("symmetric_fishing: selfish baseline did not converge at " +
                             alpha_label(alpha));
    }
    const double u_n = nash_profile.star(0);
    rows.push_back({"symmetric_fishing:nash", alpha, 0.0, u_n, symmetric_cost(u_n),
                    "fixed_point", nash_report.final_residual, nash_report.iterations});
    nash.x.push_back(alpha);
    nash.y.push_back(u_n);
  }
  series = {kantian, altruistic, nash};
}

void solve_four_type(const RunConfig& cfg, const std::vector<double>& alphas,
                     std::vector<CsvRow>& rows, std::vector<PlotSeries>& series) {
  (void)cfg;
  FiniteScenario scn = four_type_game(0.0);
  const int n = scn.space.count();
  series.clear();
  for (int k = 0; k < n; ++k) series.push_back({"rkn type " + std::to_string(k), {}, {}});
  for (int k = 0; k < n; ++k) series.push_back({"hrkn type " + std::to_string(k), {}, {}});
  for (double alpha : alphas) {
    const DirectSolve rkn = quadratic_rkn_direct(scn.space, scn.model, alpha);
    const Eigen::VectorXd rkn_costs = realized_costs(scn.space, scn.model, rkn.actions);
    for (int k = 0; k < n; ++k) {
      rows.push_back({"four_type:rkn", alpha, static_cast<double>(k), rkn.actions(k),
                      rkn_costs(k), "direct", rkn.residual, 0});
      series[static_cast<std::size_t>(k)].x.push_back(alpha);
      series[static_cast<std::size_t>(k)].y.push_back(rkn.actions(k));
    }
    const HrknSolution hrkn = quadratic_hrkn_direct(scn.space, scn.model, alpha);
    const Eigen::VectorXd hrkn_costs = realized_costs(scn.space, scn.model, hrkn.equilibrium);
    for (int k = 0; k < n; ++k) {
      rows.push_back({"four_type:hrkn", alpha, static_cast<double>(k), hrkn.equilibrium(k),
                      hrkn_costs(k), "direct", hrkn.residual, 0});
      series[static_cast<std::size_t>(n + k)].x.push_back(alpha);
      series[static_cast<std::size_t>(n + k)].y.push_back(hrkn.equilibrium(k));
    }
  }
}

void solve_continuum_scenario(const RunConfig& cfg, const std::vector<double>& alphas,
                              std::vector<CsvRow>& rows, std::vector<PlotSeries>& series) {
  for (double alpha : alphas) {
    ContinuumScenario scn = cfg.scenario == "continuum_uniform"
                                ? continuum_uniform(alpha, cfg.xi, cfg.grid_n)
                                : continuum_windowed(alpha, cfg.xi, cfg.grid_n);
    const ContinuumCandidate cand = solve_continuum(scn.spec);
    const ContinuumSolution sol = strategy_and_costs(scn.spec, cand.ubar_minus);
    const double defect = pontryagin_residual(scn.spec, cand);
    PlotSeries line{alpha_label(alpha), {}, {}};
    for (int i = 0; i < scn.spec.size(); ++i) {
      rows.push_back({scn.name, alpha, scn.spec.grid(i), cand.actions(i), sol.costs(i),
                      "fredholm", defect, 0});
      line.x.push_back(scn.spec.grid(i));
      line.y.push_back(cand.actions(i));
    }
    series.push_back(std::move(line));
  }
}

void verify_symmetric(const RunConfig& cfg, CheckRecorder& rec) {
  const std::vector<double> alphas = default_alphas("symmetric_fishing");
  double fp_err = 0.0, eg_err = 0.0, worst_increase = -1.0;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (double alpha : alphas) {
    FiniteScenario scn = symmetric_fishing(alpha);
    const GameModel game = scn.model.game_model();
    auto [profile, report] =
        fixed_point_solve(scn.space, game, scn.group, scn.weights, scn.risk, cfg.solver);
    if (!report.converged) throw ConvergenceError("symmetric_fishing fixed point diverged");
    fp_err = std::max(fp_err, std::abs(profile.star(0) - kantian_reference(alpha)));
    auto [eg_profile, eg_report] =
        extragradient_solve(scn.space, game, scn.group, scn.weights, scn.risk, cfg.solver);
    if (!eg_report.converged) throw ConvergenceError("symmetric_fishing extragradient diverged");
    eg_err = std::max(eg_err, std::abs(eg_profile.star(0) - kantian_reference(alpha)));
    if (!std::isnan(previous)) worst_increase = std::max(worst_increase, profile.star(0) - previous);
    previous = profile.star(0);
  }
  rec.value_below("symmetric: fixed point matches closed form over alpha sweep", fp_err, 1e-8);
  rec.value_below("symmetric: extragradient matches closed form over alpha sweep", eg_err, 1e-8);
  rec.value_below("symmetric: equilibrium effort decreases with alpha", worst_increase, 1e-12);
  FiniteScenario mid = symmetric_fishing(0.5);
  const MonotonicityProbe probe = monotonicity_probe(mid.space, mid.model.game_model(),
                                                     mid.group, mid.weights, mid.risk, 200,
                                                     cfg.seed);
  rec.is_positive("symmetric: sampled operator monotonicity at alpha=0.5", probe.min_value);
}

void verify_four_type(const RunConfig& cfg, CheckRecorder& rec) {
  FiniteScenario scn = four_type_game(0.0);
  double direct_res = 0.0;
  for (double alpha : default_alphas("four_type")) {
    direct_res = std::max(direct_res, quadratic_rkn_direct(scn.space, scn.model, alpha).residual);
    direct_res = std::max(direct_res, quadratic_hrkn_direct(scn.space, scn.model, alpha).residual);
  }
  rec.value_below("four_type: direct linear systems solve to machine precision", direct_res,
                  1e-12);

  const DirectSolve rkn0 = quadratic_rkn_direct(scn.space, scn.model, 0.0);
  const HrknSolution hrkn0 = quadratic_hrkn_direct(scn.space, scn.model, 0.0);
  rec.value_below("four_type: coarsened and exact solutions coincide without cooperation",
                  (rkn0.actions - hrkn0.equilibrium).cwiseAbs().maxCoeff(), 1e-10);

  double eg_err = 0.0;
  for (double alpha : {0.0, 0.5, 1.0}) {
    FiniteScenario at = four_type_game(alpha);
    auto [profile, report] = extragradient_solve(at.space, at.model.game_model(), at.group,
                                                 at.weights, at.risk, cfg.solver);
    if (!report.converged) throw ConvergenceError("four_type extragradient diverged");
    const DirectSolve direct = quadratic_rkn_direct(at.space, at.model, alpha);
    eg_err = std::max(eg_err, (profile.star - direct.actions).cwiseAbs().maxCoeff());
  }
  rec.value_below("four_type: extragradient agrees with the direct solve", eg_err, 1e-6);

  FiniteScenario full = four_type_game(1.0);
  const MonotonicityProbe probe = monotonicity_probe(full.space, full.model.game_model(),
                                                     full.group, full.weights, full.risk, 200,
                                                     cfg.seed);
  rec.is_positive("four_type: sampled operator monotonicity at alpha=1", probe.min_value);
}

void verify_continuum_uniform(const RunConfig& cfg, CheckRecorder& rec) {
  double closed_form_err = 0.0, defect = 0.0;
  for (double alpha : default_alphas("continuum_uniform")) {
    ContinuumScenario scn = continuum_uniform(alpha, cfg.xi, cfg.grid_n);
    const ContinuumCandidate cand = solve_continuum(scn.spec);
    const Eigen::VectorXd reference = continuum_uniform_reference(scn.spec, alpha);
    closed_form_err =
        std::max(closed_form_err, (cand.actions - reference).cwiseAbs().maxCoeff());
    defect = std::max(defect, pontryagin_residual(scn.spec, cand));
  }
  rec.value_below("continuum_uniform: collocation matches the closed form", closed_form_err,
                  1e-8);
  rec.value_below("continuum_uniform: optimality-condition defect on the refined grid", defect,
                  1e-5);
}

void verify_continuum_windowed(const RunConfig& cfg, CheckRecorder& rec) {
  double defect = 0.0;
  for (double alpha : {0.5, 1.0}) {
    ContinuumScenario scn = continuum_windowed(alpha, cfg.xi, cfg.grid_n);
    defect = std::max(defect, pontryagin_residual(scn.spec, solve_continuum(scn.spec)));
  }
  rec.value_below("continuum_windowed: optimality-condition defect on the refined grid", defect,
                  1e-5);

  ContinuumScenario windowed0 = continuum_windowed(0.0, cfg.xi, cfg.grid_n);
  ContinuumScenario uniform0 = continuum_uniform(0.0, cfg.xi, cfg.grid_n);
  rec.value_below(
      "continuum_windowed: zero-mass windows reduce to the selfish baseline",
      (solve_continuum(windowed0.spec).actions - solve_continuum(uniform0.spec).actions)
          .cwiseAbs()
          .maxCoeff(),
      1e-12);

  ContinuumScenario half = continuum_windowed(0.5, cfg.xi, cfg.grid_n);
  SolverConfig cross_cfg = cfg.solver;
  cross_cfg.max_outer = std::max(cross_cfg.max_outer, 30000);
  rec.value_below("continuum_windowed: finite-type discretization reproduces the continuum",
                  discretized_continuum_crosscheck(half.spec, 51, cross_cfg), 1e-3);
}

}  // namespace

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::string cursor = text;
  std::size_t pos = 0;
  while ((pos = cursor.find(':')) != std::string::npos) {
    parts.push_back(cursor.substr(0, pos));
    cursor = cursor.substr(pos + 1);
  }
  parts.push_back(cursor);
  if (parts.size() != 3) {
    throw UsageError("sweep must look like start:stop:step, got '" + text + "'");
  }
  const double start = to_double("sweep", parts[0]);
  const double stop = to_double("sweep", parts[1]);
  const double step = to_double("sweep", parts[2]);
  if (!(step > 0.0) || stop < start) {
    throw UsageError("sweep needs stop >= start and step > 0, got '" + text + "'");
  }
  std::vector<double> values;
  const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) values.push_back(start + i * step);
  return values;
}

std::map<std::string, std::string> read_key_value_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config file: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "scenario") {
      cfg.scenario = value;
    } else if (key == "sweep") {
      cfg.alphas = parse_sweep(value);
    } else if (key == "alpha") {
      cfg.alphas = {to_double(key, value)};
    } else if (key == "grid_n") {
      cfg.grid_n = to_int(key, value);
      if (cfg.grid_n < 2) throw UsageError("grid_n must be at least 2");
    } else if (key == "xi") {
      cfg.xi = value;
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "format") {
      cfg.write_csv = false;
      cfg.write_svg = false;
      std::string rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string item = trim(rest.substr(0, comma));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (item == "csv") {
          cfg.write_csv = true;
        } else if (item == "svg") {
          cfg.write_svg = true;
        } else if (!item.empty()) {
          throw UsageError("format accepts csv and svg, got '" + item + "'");
        }
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned>(to_int(key, value));
    } else if (key == "tol") {
      cfg.solver.tol = to_double(key, value);
    } else if (key == "max_outer") {
      cfg.solver.max_outer = to_int(key, value);
    } else if (key == "damping") {
      cfg.solver.damping = to_double(key, value);
    } else if (key == "inner_tol") {
      cfg.solver.inner_tol = to_double(key, value);
    } else if (key == "inner_max") {
      cfg.solver.inner_max = to_int(key, value);
    } else if (key == "extragradient_step") {
      cfg.solver.extragradient_step = to_double(key, value);
    } else if (key == "oracle_grid") {
      cfg.solver.oracle_grid = to_int(key, value);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

SolveArtifacts run_solve(const RunConfig& cfg) {
  if (cfg.scenario.empty()) throw UsageError("solve requires a scenario (see list-scenarios)");
  require_known_scenario(cfg.scenario);
  const std::vector<double> alphas =
      cfg.alphas.empty() ? default_alphas(cfg.scenario) : cfg.alphas;

  SolveArtifacts artifacts;
  std::vector<PlotSeries> series;
  std::string x_label = "alpha";
  if (cfg.scenario == "symmetric_fishing") {
    solve_symmetric(cfg, alphas, artifacts.rows, series);
  } else if (cfg.scenario == "four_type") {
    solve_four_type(cfg, alphas, artifacts.rows, series);
  } else {
    solve_continuum_scenario(cfg, alphas, artifacts.rows, series);
    x_label = "type position x";
  }

  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path out(cfg.out_dir);
  if (cfg.write_csv) {
    const std::string path = (out / "equilibrium.csv").string();
    write_text_file(path, render_csv(artifacts.rows));
    artifacts.written_files.push_back(path);
  }
  if (cfg.write_svg) {
    const std::string path = (out / "equilibrium.svg").string();
    write_text_file(path, render_line_chart(cfg.scenario, x_label, "equilibrium action",
                                            series));
    artifacts.written_files.push_back(path);
  }

  nlohmann::ordered_json meta;
  meta["scenario"] = cfg.scenario;
  meta["alphas"] = alphas;
  meta["xi"] = cfg.xi;
  meta["grid_n"] = cfg.grid_n;
  meta["seed"] = cfg.seed;
  meta["solver"] = {{"tol", cfg.solver.tol},
                    {"max_outer", cfg.solver.max_outer},
                    {"damping", cfg.solver.damping},
                    {"inner_tol", cfg.solver.inner_tol},
                    {"inner_max", cfg.solver.inner_max},
                    {"extragradient_step", cfg.solver.extragradient_step},
                    {"oracle_grid", cfg.solver.oracle_grid}};
  meta["row_count"] = artifacts.rows.size();
  meta["files"] = artifacts.written_files;
  const std::string meta_path = (out / "metadata.json").string();
  write_text_file(meta_path, meta.dump(2) + "\n");
  artifacts.written_files.push_back(meta_path);
  return artifacts;
}

VerifyOutcome run_verify(const RunConfig& cfg) {
  std::vector<std::string> targets;
  if (cfg.scenario.empty()) {
    targets = scenario_names();
  } else {
    require_known_scenario(cfg.scenario);
    targets = {cfg.scenario};
  }
  CheckRecorder rec;
  for (const std::string& name : targets) {
    if (name == "symmetric_fishing") {
      verify_symmetric(cfg, rec);
    } else if (name == "four_type") {
      verify_four_type(cfg, rec);
    } else if (name == "continuum_uniform") {
      verify_continuum_uniform(cfg, rec);
    } else if (name == "continuum_windowed") {
      verify_continuum_windowed(cfg, rec);
    }
  }
  return rec.outcome;
}

}  // namespace kantmfg
