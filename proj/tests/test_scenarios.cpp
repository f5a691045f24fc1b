#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kantmfg/scenarios.hpp"

using namespace kantmfg;

TEST_CASE("reference curves of the single-type game") {
  CHECK(kantian_reference(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(kantian_reference(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(kantian_reference(0.5) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(altruistic_reference(0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(altruistic_reference(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  // Between the extremes the two cooperation notions differ.
  CHECK(altruistic_reference(0.5) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(kantian_reference(0.5) < altruistic_reference(0.5));
  CHECK(symmetric_cost(0.25) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(symmetric_cost(1.0 / 3.0) == doctest::Approx(-1.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("packaged finite scenarios") {
  const FiniteScenario sym = symmetric_fishing(0.5);
  CHECK(sym.space.count() == 1);
  CHECK(sym.group.mass(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sym.risk.beta == 0.0);
  CHECK(sym.parameters.at("alpha") == 0.5);

  const FiniteScenario four = four_type_game(0.25);
  CHECK(four.space.count() == 4);
  CHECK(four.space.distinct_count() == 4);
  CHECK(four.space.distribution() == Eigen::Vector4d(0.1, 0.2, 0.3, 0.4));
  Eigen::Vector4d a(1.0, 2.0, 1.0, 2.0), b(1.0, 1.0, 2.0, 2.0);
  CHECK(four.model.effort_weight == a);
  CHECK(four.model.efficiency == b);
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      CHECK(four.group.weight(k, j) ==
            doctest::Approx(0.25 * four.space.distribution()(j)).epsilon(1e-15));
    }
  }
}

TEST_CASE("efficiency profiles by name") {
  CHECK(xi_profile("flat")(0.37) == 1.0);
  CHECK(xi_profile("linear")(0.37) == 0.37);
  CHECK(xi_profile("affine")(0.4) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK_THROWS_AS(xi_profile("quadratic"), std::invalid_argument);
}

TEST_CASE("packaged continuum scenarios") {
  const ContinuumScenario uni = continuum_uniform(0.5, "flat", 101);
  CHECK(uni.spec.size() == 101);
  CHECK_NOTHROW(uni.spec.validate());
  CHECK(uni.parameters.at("alpha") == 0.5);

  const ContinuumScenario win = continuum_windowed(0.25, "affine", 201);
  CHECK_NOTHROW(win.spec.validate());
  CHECK(win.spec.r_kernel.maxCoeff() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("uniform continuum closed form agrees with the solver and the finite game") {
  for (const double alpha : {0.0, 0.3, 0.7, 1.0}) {
    const ContinuumScenario scn = continuum_uniform(alpha, "flat", 201);
    const Eigen::VectorXd reference = continuum_uniform_reference(scn.spec, alpha);
    const ContinuumCandidate cand = solve_continuum(scn.spec);
    CHECK((cand.actions - reference).lpNorm<Eigen::Infinity>() < 1e-10);
    // Flat efficiency makes the continuum game a copy of the single-type one.
    CHECK((reference.array() - kantian_reference(alpha)).abs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("scenario registry") {
  const std::vector<std::string> names = scenario_names();
  CHECK(names.size() == 4);
  for (const char* expected :
       {"symmetric_fishing", "four_type", "continuum_uniform", "continuum_windowed"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
}
