#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "kantmfg/finite_solver.hpp"
#include "kantmfg/scenarios.hpp"
#include "test_support.hpp"

using namespace kantmfg;
using kantmfg::testing::one_type_model;
using kantmfg::testing::one_type_space;

TEST_CASE("single-type best responses against hand-computed minimizers") {
  const FiniteTypeSpace space = one_type_space();
  const GameModel model = one_type_model().game_model();
  const WeightKernel w = WeightKernel::ones(space);
  Eigen::VectorXd star(1);

  // Full cooperation: the group objective is 2u^2 - u regardless of star.
  const GroupMeasure full = GroupMeasure::full(space);
  for (const double s : {0.1, 0.5, 0.9}) {
    star << s;
    const BestResponse br =
        group_best_response(0, star, space, model, full, w, RiskFactor::mean());
    CHECK(br.converged);
    CHECK(std::abs(br.actions(0) - 0.25) < 1e-9);
  }

  // Half cooperation from star = 0.3: minimize 1.5 u^2 - 0.85 u.
  const GroupMeasure half = GroupMeasure::uniform(space, 0.5);
  star << 0.3;
  const BestResponse br =
      group_best_response(0, star, space, model, half, w, RiskFactor::mean());
  CHECK(br.converged);
  CHECK(std::abs(br.actions(0) - 0.85 / 3.0) < 1e-9);
  CHECK(br.residual < 1e-10);
}

TEST_CASE("both solvers reproduce the single-type closed form across cooperation levels") {
  const FiniteTypeSpace space = one_type_space();
  const GameModel model = one_type_model().game_model();
  const WeightKernel w = WeightKernel::ones(space);

  for (const double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const GroupMeasure group = GroupMeasure::uniform(space, alpha);
    const double expected = 1.0 / (3.0 + alpha);

    const auto [fp, fp_report] =
        fixed_point_solve(space, model, group, w, RiskFactor::mean());
    CHECK(fp_report.converged);
    CHECK(fp_report.iterations > 0);
    CHECK(std::abs(fp.star(0) - expected) < 1e-8);
    CHECK(std::abs(fp.group_actions(0, 0) - expected) < 1e-8);

    const auto [eg, eg_report] =
        extragradient_solve(space, model, group, w, RiskFactor::mean());
    CHECK(eg_report.converged);
    CHECK(!eg_report.residual_history.empty());
    CHECK(std::abs(eg.star(0) - expected) < 1e-8);
  }
}

TEST_CASE("canonical cooperation modes of the single-type game") {
  const FiniteTypeSpace space = one_type_space();
  const GameModel model = one_type_model().game_model();

  const SpecialCaseSetup nash = build_special_case(SpecialCase::Nash, space);
  CHECK(nash.group.mass(0) == 0.0);
  CHECK(nash.risk.beta == 0.0);
  const auto [nash_profile, nash_report] =
      fixed_point_solve(space, model, nash.group, nash.weights, nash.risk);
  CHECK(nash_report.converged);
  CHECK(std::abs(nash_profile.star(0) - 1.0 / 3.0) < 1e-8);

  const SpecialCaseSetup harsanyi = build_special_case(SpecialCase::Harsanyi, space);
  CHECK(harsanyi.group.mass(0) == doctest::Approx(1.0).epsilon(1e-15));
  const auto [h_profile, h_report] =
      fixed_point_solve(space, model, harsanyi.group, harsanyi.weights, harsanyi.risk);
  CHECK(h_report.converged);
  CHECK(std::abs(h_profile.star(0) - 0.25) < 1e-8);

  // Worst-case and best-case attitudes coincide with the cooperative optimum
  // when there is a single member type; both run through the grid oracle.
  const SpecialCaseSetup rawls = build_special_case(SpecialCase::Rawls, space);
  CHECK(!rawls.risk.is_finite());
  const auto [r_profile, r_report] =
      fixed_point_solve(space, model, rawls.group, rawls.weights, rawls.risk);
  CHECK(r_report.converged);
  CHECK(std::abs(r_profile.star(0) - 0.25) < 1e-5);

  const SpecialCaseSetup best = build_special_case(SpecialCase::BestOff, space);
  const auto [b_profile, b_report] =
      fixed_point_solve(space, model, best.group, best.weights, best.risk);
  CHECK(b_report.converged);
  CHECK(std::abs(b_profile.star(0) - 0.25) < 1e-5);

  // A coalition covering the whole (single-type) population is full cooperation.
  const SpecialCaseSetup coalition = build_coalition_case(space, {{0}});
  const auto [c_profile, c_report] =
      fixed_point_solve(space, model, coalition.group, coalition.weights, coalition.risk);
  CHECK(c_report.converged);
  CHECK(std::abs(c_profile.star(0) - 0.25) < 1e-8);

  CHECK_THROWS_AS(build_uniform_case(space, 2.0), std::invalid_argument);
}

TEST_CASE("four-type direct solutions against hand-reduced linear algebra") {
  // Masses (0.1, 0.2, 0.3, 0.4), effort weights (1, 2, 1, 2), efficiencies
  // (1, 1, 2, 2): the rank-one structure gives u = v / (2.1 + 1.1 alpha)
  // with v = (0.5, 0.25, 1, 0.5).
  Eigen::Vector4d v(0.5, 0.25, 1.0, 0.5);

  const FiniteScenario zero = four_type_game(0.0);
  const DirectSolve at0 = quadratic_rkn_direct(zero.space, zero.model, 0.0);
  CHECK(at0.residual < 1e-12);
  CHECK((at0.actions - v / 2.1).lpNorm<Eigen::Infinity>() < 1e-12);

  const FiniteScenario one = four_type_game(1.0);
  const DirectSolve at1 = quadratic_rkn_direct(one.space, one.model, 1.0);
  CHECK(at1.residual < 1e-12);
  CHECK((at1.actions - v / 3.2).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("coarsened strategies: two perception classes by effort weight") {
  const FiniteScenario scn = four_type_game(1.0);

  // Full cooperation with class-blind strategies: class a = 1 plays b / 8.2,
  // class a = 2 plays b / 10.2.
  const HrknSolution sol = quadratic_hrkn_direct(scn.space, scn.model, 1.0);
  CHECK(sol.residual < 1e-12);
  Eigen::Vector4d expected(1.0 / 8.2, 1.0 / 10.2, 2.0 / 8.2, 2.0 / 10.2);
  CHECK((sol.equilibrium - expected).lpNorm<Eigen::Infinity>() < 1e-10);

  // Each class's imagined profile matches the equilibrium on its own rows.
  CHECK(std::abs(sol.class1_profile(0) - sol.equilibrium(0)) < 1e-10);
  CHECK(std::abs(sol.class1_profile(2) - sol.equilibrium(2)) < 1e-10);
  CHECK(std::abs(sol.class2_profile(1) - sol.equilibrium(1)) < 1e-10);
  CHECK(std::abs(sol.class2_profile(3) - sol.equilibrium(3)) < 1e-10);

  // Without cooperation the coarsening does not bind.
  const FiniteScenario zero = four_type_game(0.0);
  const HrknSolution coarse0 = quadratic_hrkn_direct(zero.space, zero.model, 0.0);
  const DirectSolve exact0 = quadratic_rkn_direct(zero.space, zero.model, 0.0);
  CHECK((coarse0.equilibrium - exact0.actions).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("extragradient agrees with the direct four-type solution") {
  for (const double alpha : {0.0, 0.5, 1.0}) {
    const FiniteScenario scn = four_type_game(alpha);
    const DirectSolve direct = quadratic_rkn_direct(scn.space, scn.model, alpha);
    const auto [profile, report] = extragradient_solve(
        scn.space, scn.model.game_model(), scn.group, scn.weights, scn.risk);
    CHECK(report.converged);
    CHECK((profile.star - direct.actions).lpNorm<Eigen::Infinity>() < 1e-6);

    // Consistency between each planner's own slot and her equilibrium action,
    // and a small stacked stationarity residual.
    for (int k = 0; k < scn.space.count(); ++k) {
      CHECK(std::abs(profile.group_actions(k, scn.space.sigma(k)) - profile.star(k)) <
            1e-7);
    }
    SolverConfig cfg;
    CHECK(vi_residual(profile.group_actions, profile.star, cfg.extragradient_step,
                      scn.space, scn.model.game_model(), scn.group, scn.weights,
                      scn.risk) < 1e-7);
  }
}

TEST_CASE("sampled monotonicity certificates") {
  const FiniteScenario scn = four_type_game(1.0);
  const MonotonicityProbe probe =
      monotonicity_probe(scn.space, scn.model.game_model(), scn.group, scn.weights,
                         scn.risk, 200, 20240811u);
  CHECK(probe.certificate);
  CHECK(probe.min_value > 0.0);

  // A concave stage cost breaks monotonicity and the probe reports it.
  const FiniteTypeSpace space = one_type_space();
  const QuadraticFishingModel concave(Eigen::VectorXd::Constant(1, -1.0),
                                      Eigen::VectorXd::Ones(1));
  const MonotonicityProbe bad =
      monotonicity_probe(space, concave.game_model(), GroupMeasure::zero(space),
                         WeightKernel::ones(space), RiskFactor::mean(), 200, 7u);
  CHECK(!bad.certificate);
  CHECK(bad.min_value < 0.0);
}

TEST_CASE("seeded random instances: the two solvers find the same equilibrium") {
  std::mt19937 rng(987123);
  for (int trial = 0; trial < 8; ++trial) {
    const int n_types = 1 + static_cast<int>(rng() % 4u);
    kantmfg::testing::RandomInstance inst =
        kantmfg::testing::random_convex_instance(rng, n_types);
    const GameModel model = inst.model.game_model();
    const auto [fp, fp_report] =
        fixed_point_solve(inst.space, model, inst.group, inst.weights, RiskFactor::mean());
    const auto [eg, eg_report] = extragradient_solve(inst.space, model, inst.group,
                                                     inst.weights, RiskFactor::mean());
    CAPTURE(trial);
    CHECK(fp_report.converged);
    CHECK(eg_report.converged);
    CHECK((fp.star - eg.star).lpNorm<Eigen::Infinity>() < 1e-6);
  }
}
