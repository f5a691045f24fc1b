#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kantmfg/finite_solver.hpp"
#include "kantmfg/game_model.hpp"
#include "kantmfg/group_cost.hpp"
#include "kantmfg/lq_continuum.hpp"
#include "kantmfg/oracle.hpp"
#include "kantmfg/scenarios.hpp"
#include "kantmfg/types.hpp"

namespace py = pybind11;
using namespace kantmfg;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equilibrium solvers for quadratic harvesting games with virtual-group reasoning";

  py::class_<FiniteTypeSpace>(m, "FiniteTypeSpace",
                              "Finite population of type pairs (individual features, social "
                              "label) with a distribution over them")
      .def(py::init<std::vector<FiniteTypeSpace::IndividualType>, std::vector<int>,
                    Eigen::VectorXd>(),
           py::arg("individual_types"), py::arg("social_types"), py::arg("distribution"))
      .def("count", &FiniteTypeSpace::count)
      .def("distinct_count", &FiniteTypeSpace::distinct_count)
      .def("individual_types", &FiniteTypeSpace::individual_types)
      .def("social_types", &FiniteTypeSpace::social_types)
      .def("distribution", &FiniteTypeSpace::distribution)
      .def("sigma", &FiniteTypeSpace::sigma, py::arg("k"))
      .def("representative", &FiniteTypeSpace::representative, py::arg("j"));

  py::class_<GroupMeasure>(m, "GroupMeasure",
                           "Per-type sub-probability rows describing each player's virtual group")
      .def(py::init<const FiniteTypeSpace&, Eigen::MatrixXd>(), py::arg("space"),
           py::arg("weights"))
      .def("weights", &GroupMeasure::weights)
      .def("weight", &GroupMeasure::weight, py::arg("k"), py::arg("member"))
      .def("mass", &GroupMeasure::mass, py::arg("k"))
      .def("masses", &GroupMeasure::masses)
      .def_static("zero", &GroupMeasure::zero, py::arg("space"))
      .def_static("full", &GroupMeasure::full, py::arg("space"))
      .def_static("uniform", &GroupMeasure::uniform, py::arg("space"), py::arg("alpha"))
      .def_static("coalition", &GroupMeasure::coalition, py::arg("space"), py::arg("blocks"));

  py::class_<WeightKernel>(m, "WeightKernel",
                           "Importance weights a player assigns to group members' costs")
      .def(py::init<const FiniteTypeSpace&, const GroupMeasure&, Eigen::MatrixXd>(),
           py::arg("space"), py::arg("group"), py::arg("weights"))
      .def("weights", &WeightKernel::weights)
      .def("weight", &WeightKernel::weight, py::arg("k"), py::arg("member"))
      .def_static("ones", &WeightKernel::ones, py::arg("space"));

  py::class_<RiskFactor>(m, "RiskFactor",
                         "Risk attitude for aggregating member costs (0 mean, +inf worst, "
                         "-inf best)")
      .def(py::init<>())
      .def(py::init([](double beta) { return RiskFactor{beta}; }), py::arg("beta"))
      .def_readwrite("beta", &RiskFactor::beta)
      .def("is_finite", &RiskFactor::is_finite)
      .def_static("mean", &RiskFactor::mean)
      .def_static("worst_case", &RiskFactor::worst_case)
      .def_static("best_case", &RiskFactor::best_case);

  py::class_<EquilibriumProfile>(m, "EquilibriumProfile")
      .def_readonly("star", &EquilibriumProfile::star)
      .def_readonly("group_actions", &EquilibriumProfile::group_actions);

  py::class_<QuadraticFishingModel>(m, "QuadraticFishingModel",
                                    "Stage cost a u^2 - (1 - ubar) b u with aggregate b u")
      .def(py::init<Eigen::VectorXd, Eigen::VectorXd, double, double>(), py::arg("a"),
           py::arg("b"), py::arg("lo") = 0.0, py::arg("hi") = 1.0)
      .def_readonly("effort_weight", &QuadraticFishingModel::effort_weight)
      .def_readonly("efficiency", &QuadraticFishingModel::efficiency)
      .def_readonly("action_lo", &QuadraticFishingModel::action_lo)
      .def_readonly("action_hi", &QuadraticFishingModel::action_hi)
      .def("count", &QuadraticFishingModel::count);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tol", &SolverConfig::tol)
      .def_readwrite("max_outer", &SolverConfig::max_outer)
      .def_readwrite("damping", &SolverConfig::damping)
      .def_readwrite("inner_tol", &SolverConfig::inner_tol)
      .def_readwrite("inner_max", &SolverConfig::inner_max)
      .def_readwrite("extragradient_step", &SolverConfig::extragradient_step)
      .def_readwrite("oracle_grid", &SolverConfig::oracle_grid);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("residual_history", &SolveReport::residual_history);

  py::class_<BestResponse>(m, "BestResponse")
      .def_readonly("actions", &BestResponse::actions)
      .def_readonly("converged", &BestResponse::converged)
      .def_readonly("iterations", &BestResponse::iterations)
      .def_readonly("residual", &BestResponse::residual);

  py::class_<MonotonicityProbe>(m, "MonotonicityProbe")
      .def_readonly("min_value", &MonotonicityProbe::min_value)
      .def_readonly("certificate", &MonotonicityProbe::certificate);

  py::class_<DirectSolve>(m, "DirectSolve")
      .def_readonly("actions", &DirectSolve::actions)
      .def_readonly("residual", &DirectSolve::residual);

  py::class_<HrknSolution>(m, "HrknSolution")
      .def_readonly("equilibrium", &HrknSolution::equilibrium)
      .def_readonly("class1_profile", &HrknSolution::class1_profile)
      .def_readonly("class2_profile", &HrknSolution::class2_profile)
      .def_readonly("residual", &HrknSolution::residual);

  py::enum_<SpecialCase>(m, "SpecialCase")
      .value("Nash", SpecialCase::Nash)
      .value("Harsanyi", SpecialCase::Harsanyi)
      .value("Rawls", SpecialCase::Rawls)
      .value("BestOff", SpecialCase::BestOff);

  py::class_<SpecialCaseSetup>(m, "SpecialCaseSetup")
      .def_readonly("group", &SpecialCaseSetup::group)
      .def_readonly("weights", &SpecialCaseSetup::weights)
      .def_readonly("risk", &SpecialCaseSetup::risk);

  py::class_<FiniteScenario>(m, "FiniteScenario")
      .def_readonly("name", &FiniteScenario::name)
      .def_readonly("space", &FiniteScenario::space)
      .def_readonly("model", &FiniteScenario::model)
      .def_readonly("group", &FiniteScenario::group)
      .def_readonly("weights", &FiniteScenario::weights)
      .def_readonly("risk", &FiniteScenario::risk)
      .def_readonly("parameters", &FiniteScenario::parameters);

  m.def("risk_aggregate", &risk_aggregate, py::arg("values"), py::arg("masses"),
        py::arg("beta"),
        "Risk-sensitive aggregation interpolating mean (beta=0), worst (+inf), best (-inf)");
  m.def(
      "aggregate_statistic",
      [](const Eigen::VectorXd& profile, const FiniteTypeSpace& space,
         const QuadraticFishingModel& model) {
        return aggregate_statistic(profile, space, model.game_model());
      },
      py::arg("profile"), py::arg("space"), py::arg("model"));
  m.def(
      "group_mean_field",
      [](int k, const Eigen::VectorXd& group_actions, const Eigen::VectorXd& star,
         const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group) {
        return group_mean_field(k, group_actions, star, space, model.game_model(), group);
      },
      py::arg("k"), py::arg("group_actions"), py::arg("star"), py::arg("space"),
      py::arg("model"), py::arg("group"));
  m.def(
      "group_cost",
      [](int k, const Eigen::VectorXd& group_actions, const Eigen::VectorXd& star,
         const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta) {
        return group_cost(k, group_actions, star, space, model.game_model(), group, weights,
                          beta);
      },
      py::arg("k"), py::arg("group_actions"), py::arg("star"), py::arg("space"),
      py::arg("model"), py::arg("group"), py::arg("weights"), py::arg("beta"));
  m.def(
      "grad_group_cost",
      [](int k, const Eigen::VectorXd& group_actions, const Eigen::VectorXd& star,
         const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta) {
        return grad_group_cost(k, group_actions, star, space, model.game_model(), group,
                               weights, beta);
      },
      py::arg("k"), py::arg("group_actions"), py::arg("star"), py::arg("space"),
      py::arg("model"), py::arg("group"), py::arg("weights"), py::arg("beta"));

  m.def(
      "group_best_response",
      [](int k, const Eigen::VectorXd& star, const FiniteTypeSpace& space,
         const QuadraticFishingModel& model, const GroupMeasure& group,
         const WeightKernel& weights, RiskFactor beta, const SolverConfig& cfg) {
        return group_best_response(k, star, space, model.game_model(), group, weights, beta,
                                   cfg);
      },
      py::arg("k"), py::arg("star"), py::arg("space"), py::arg("model"), py::arg("group"),
      py::arg("weights"), py::arg("beta"), py::arg("cfg") = SolverConfig{});
  m.def(
      "fixed_point_solve",
      [](const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta,
         const SolverConfig& cfg) {
        return fixed_point_solve(space, model.game_model(), group, weights, beta, cfg);
      },
      py::arg("space"), py::arg("model"), py::arg("group"), py::arg("weights"),
      py::arg("beta"), py::arg("cfg") = SolverConfig{});
  m.def(
      "extragradient_solve",
      [](const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta,
         const SolverConfig& cfg) {
        return extragradient_solve(space, model.game_model(), group, weights, beta, cfg);
      },
      py::arg("space"), py::arg("model"), py::arg("group"), py::arg("weights"),
      py::arg("beta"), py::arg("cfg") = SolverConfig{});
  m.def(
      "vi_residual",
      [](const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star, double step,
         const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta) {
        return vi_residual(group_actions, star, step, space, model.game_model(), group,
                           weights, beta);
      },
      py::arg("group_actions"), py::arg("star"), py::arg("step"), py::arg("space"),
      py::arg("model"), py::arg("group"), py::arg("weights"), py::arg("beta"));
  m.def(
      "monotonicity_probe",
      [](const FiniteTypeSpace& space, const QuadraticFishingModel& model,
         const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta,
         int samples, unsigned seed) {
        return monotonicity_probe(space, model.game_model(), group, weights, beta, samples,
                                  seed);
      },
      py::arg("space"), py::arg("model"), py::arg("group"), py::arg("weights"),
      py::arg("beta"), py::arg("samples"), py::arg("seed"));

  m.def("quadratic_rkn_direct", &quadratic_rkn_direct, py::arg("space"), py::arg("model"),
        py::arg("alpha"));
  m.def("quadratic_hrkn_direct", &quadratic_hrkn_direct, py::arg("space"), py::arg("model"),
        py::arg("alpha"));
  m.def("build_special_case", &build_special_case, py::arg("kind"), py::arg("space"));
  m.def("build_coalition_case", &build_coalition_case, py::arg("space"), py::arg("blocks"));
  m.def("build_uniform_case", &build_uniform_case, py::arg("space"), py::arg("alpha"));

  m.def(
      "brute_force_group_min",
      [](int k, const Eigen::VectorXd& star, const FiniteTypeSpace& space,
         const QuadraticFishingModel& model, const GroupMeasure& group,
         const WeightKernel& weights, RiskFactor beta, int grid_n) {
        return brute_force_group_min(k, star, space, model.game_model(), group, weights, beta,
                                     grid_n);
      },
      py::arg("k"), py::arg("star"), py::arg("space"), py::arg("model"), py::arg("group"),
      py::arg("weights"), py::arg("beta"), py::arg("grid_n") = 21);
  m.def(
      "brute_force_social_opt",
      [](const FiniteTypeSpace& space, const QuadraticFishingModel& model, int grid_n) {
        return brute_force_social_opt(space, model.game_model(), grid_n);
      },
      py::arg("space"), py::arg("model"), py::arg("grid_n") = 21);
  m.def(
      "brute_force_minimax",
      [](const FiniteTypeSpace& space, const QuadraticFishingModel& model, int grid_n) {
        return brute_force_minimax(space, model.game_model(), grid_n);
      },
      py::arg("space"), py::arg("model"), py::arg("grid_n") = 21);
  m.def("discretized_continuum_crosscheck", &discretized_continuum_crosscheck, py::arg("spec"),
        py::arg("n_types"), py::arg("cfg") = SolverConfig{});

  py::class_<ContinuumLQSpec>(m, "ContinuumLQSpec",
                              "Sampled continuum-of-types game on a quadrature grid")
      .def(py::init<>())
      .def_readwrite("grid", &ContinuumLQSpec::grid)
      .def_readwrite("xi", &ContinuumLQSpec::xi)
      .def_readwrite("p_density", &ContinuumLQSpec::p_density)
      .def_readwrite("quad_weights", &ContinuumLQSpec::quad_weights)
      .def_readwrite("r_kernel", &ContinuumLQSpec::r_kernel)
      .def_readwrite("w_kernel", &ContinuumLQSpec::w_kernel)
      .def_readwrite("xi_fn", &ContinuumLQSpec::xi_fn)
      .def_readwrite("r_fn", &ContinuumLQSpec::r_fn)
      .def_readwrite("w_fn", &ContinuumLQSpec::w_fn)
      .def("size", &ContinuumLQSpec::size)
      .def("has_analytic_kernels", &ContinuumLQSpec::has_analytic_kernels)
      .def("validate", &ContinuumLQSpec::validate);

  py::class_<QuadratureConstants>(m, "QuadratureConstants")
      .def_readonly("c1", &QuadratureConstants::c1)
      .def_readonly("c2", &QuadratureConstants::c2)
      .def_readonly("c3", &QuadratureConstants::c3);

  py::class_<MultiplierPair>(m, "MultiplierPair")
      .def_readonly("chi2", &MultiplierPair::chi2)
      .def_readonly("p1", &MultiplierPair::p1);

  py::class_<ContinuumSolution>(m, "ContinuumSolution")
      .def_readonly("actions", &ContinuumSolution::actions)
      .def_readonly("costs", &ContinuumSolution::costs)
      .def_readonly("population_aggregate", &ContinuumSolution::population_aggregate);

  py::class_<ContinuumCandidate>(m, "ContinuumCandidate")
      .def_readonly("actions", &ContinuumCandidate::actions)
      .def_readonly("chi2", &ContinuumCandidate::chi2)
      .def_readonly("p1", &ContinuumCandidate::p1)
      .def_readonly("ubar_minus", &ContinuumCandidate::ubar_minus);

  py::class_<ContinuumScenario>(m, "ContinuumScenario")
      .def_readonly("name", &ContinuumScenario::name)
      .def_readonly("spec", &ContinuumScenario::spec)
      .def_readonly("parameters", &ContinuumScenario::parameters);

  m.def("quadrature_constants", &quadrature_constants, py::arg("spec"), py::arg("player"));
  m.def("closed_form_multipliers", &closed_form_multipliers, py::arg("spec"),
        py::arg("player"), py::arg("ubar_minus"));
  m.def("lq_optimal_action", &lq_optimal_action, py::arg("spec"), py::arg("player"),
        py::arg("t_index"), py::arg("multipliers"), py::arg("ubar_minus"));
  m.def("fredholm_solve", &fredholm_solve, py::arg("spec"));
  m.def("strategy_and_costs", &strategy_and_costs, py::arg("spec"), py::arg("ubar_minus"));
  m.def("pontryagin_residual", &pontryagin_residual, py::arg("spec"), py::arg("candidate"));
  m.def("solve_continuum", &solve_continuum, py::arg("spec"));
  m.def("uniform_continuum_spec", &uniform_continuum_spec, py::arg("alpha"), py::arg("n"),
        py::arg("xi_fn"));
  m.def("windowed_continuum_spec", &windowed_continuum_spec, py::arg("alpha"), py::arg("n"),
        py::arg("xi_fn"));

  m.def("symmetric_fishing", &symmetric_fishing, py::arg("alpha"));
  m.def("four_type_game", &four_type_game, py::arg("alpha"));
  m.def("kantian_reference", &kantian_reference, py::arg("alpha"));
  m.def("altruistic_reference", &altruistic_reference, py::arg("alpha"));
  m.def("symmetric_cost", &symmetric_cost, py::arg("u"));
  m.def("xi_profile", &xi_profile, py::arg("id"));
  m.def("continuum_uniform", &continuum_uniform, py::arg("alpha"), py::arg("xi") = "flat",
        py::arg("n") = 201);
  m.def("continuum_windowed", &continuum_windowed, py::arg("alpha"), py::arg("xi") = "flat",
        py::arg("n") = 201);
  m.def("continuum_uniform_reference", &continuum_uniform_reference, py::arg("spec"),
        py::arg("alpha"));
  m.def("scenario_names", &scenario_names);
}
