#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>

#include "kantmfg/lq_continuum.hpp"

using namespace kantmfg;

namespace {

const std::function<double(double)> flat = [](double) { return 1.0; };
const std::function<double(double)> ramp = [](double t) { return t; };
const std::function<double(double)> affine = [](double t) { return 0.5 + 0.5 * t; };

int node_index(const ContinuumLQSpec& spec, double x) {
  int best = 0;
  for (int i = 1; i < spec.size(); ++i) {
    if (std::abs(spec.grid(i) - x) < std::abs(spec.grid(best) - x)) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("uniform membership, flat efficiency: every quantity has a closed form") {
  const ContinuumLQSpec spec = uniform_continuum_spec(0.5, 201, flat);
  CHECK_NOTHROW(spec.validate());

  const QuadratureConstants qc = quadrature_constants(spec, 100);
  CHECK(std::abs(qc.c1 - 0.5) < 1e-12);
  CHECK(std::abs(qc.c2 - 0.5) < 1e-12);
  CHECK(std::abs(qc.c3 - 0.5) < 1e-12);

  const Eigen::VectorXd v = fredholm_solve(spec);
  CHECK((v.array() - 1.0 / 7.0).abs().maxCoeff() < 1e-12);

  const MultiplierPair mult = closed_form_multipliers(spec, 100, 1.0 / 7.0);
  CHECK(std::abs(mult.chi2 - 1.0 / 7.0) < 1e-12);
  CHECK(std::abs(mult.p1 - 1.0 / 7.0) < 1e-12);

  const ContinuumSolution sol = strategy_and_costs(spec, v);
  CHECK((sol.actions.array() - 2.0 / 7.0).abs().maxCoeff() < 1e-12);
  CHECK(std::abs(sol.population_aggregate - 2.0 / 7.0) < 1e-12);
  CHECK((sol.costs.array() + 6.0 / 49.0).abs().maxCoeff() < 1e-12);

  const ContinuumCandidate cand = solve_continuum(spec);
  CHECK((cand.actions.array() - 2.0 / 7.0).abs().maxCoeff() < 1e-12);
  CHECK((cand.chi2.array() - 1.0 / 7.0).abs().maxCoeff() < 1e-12);
  CHECK((cand.p1.array() - 1.0 / 7.0).abs().maxCoeff() < 1e-12);
  CHECK(pontryagin_residual(spec, cand) < 1e-12);
}

TEST_CASE("full membership removes the outside statistic") {
  const ContinuumLQSpec spec = uniform_continuum_spec(1.0, 201, flat);
  const ContinuumCandidate cand = solve_continuum(spec);
  CHECK((cand.ubar_minus.array()).abs().maxCoeff() < 1e-12);
  CHECK((cand.actions.array() - 0.25).abs().maxCoeff() < 1e-12);
  CHECK((cand.chi2.array() - 0.25).abs().maxCoeff() < 1e-12);
}

TEST_CASE("ramp efficiency profiles match the hand-derived equilibria") {
  // No cooperation: v = 1/7 and u(x) = 3x/7.
  const ContinuumLQSpec selfish = uniform_continuum_spec(0.0, 201, ramp);
  const ContinuumCandidate c0 = solve_continuum(selfish);
  CHECK((c0.ubar_minus.array() - 1.0 / 7.0).abs().maxCoeff() < 1e-5);
  CHECK((c0.actions - 3.0 / 7.0 * selfish.grid).lpNorm<Eigen::Infinity>() < 1e-4);

  // Half cooperation: C = 1/6, v = 1/15, u(x) = 2x/5.
  const ContinuumLQSpec half = uniform_continuum_spec(0.5, 201, ramp);
  const QuadratureConstants qc = quadrature_constants(half, 57);
  CHECK(std::abs(qc.c1 - 1.0 / 6.0) < 1e-5);
  CHECK(std::abs(qc.c1 - 1.0 / 6.0) > 1e-9);  // genuinely quadrature, not symbolic
  CHECK(std::abs(qc.c2 - qc.c1) < 1e-14);
  const ContinuumCandidate c5 = solve_continuum(half);
  CHECK((c5.ubar_minus.array() - 1.0 / 15.0).abs().maxCoeff() < 1e-5);
  CHECK((c5.actions - 0.4 * half.grid).lpNorm<Eigen::Infinity>() < 1e-4);
}

TEST_CASE("the multiplier system rejects a singular denominator") {
  // Two grid points with an importance weight W satisfying W + 1/W = 34 drive
  // (C1 + 2)^2 - C2 C3 to zero.
  const double W = 17.0 + 12.0 * std::sqrt(2.0);
  ContinuumLQSpec spec;
  spec.grid = Eigen::Vector2d(0.0, 1.0);
  spec.xi = Eigen::Vector2d(1.0, 1.0);
  spec.p_density = Eigen::Vector2d(1.0, 1.0);
  spec.quad_weights = Eigen::Vector2d(0.5, 0.5);
  spec.r_kernel = Eigen::MatrixXd::Ones(2, 2);
  spec.w_kernel = Eigen::MatrixXd::Ones(2, 2);
  spec.w_kernel(0, 0) = W;
  CHECK_NOTHROW(spec.validate());
  CHECK_THROWS_AS(closed_form_multipliers(spec, 0, 0.0), std::domain_error);
  // The other player's column is regular.
  CHECK_NOTHROW(closed_form_multipliers(spec, 1, 0.0));
  // The integral-equation reduction only covers unit importance weights.
  CHECK_THROWS_AS(fredholm_solve(spec), std::invalid_argument);
}

TEST_CASE("windowed membership kernel geometry") {
  const ContinuumLQSpec spec = windowed_continuum_spec(0.5, 201, flat);
  CHECK_NOTHROW(spec.validate());

  // Members beyond the cap belong to no group at all.
  for (int j = 0; j < spec.size(); ++j) {
    if (spec.grid(j) > 0.9 + 1e-9) {
      CHECK(spec.r_kernel.row(j).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }

  const int player_half = node_index(spec, 0.5);
  CHECK(spec.r_kernel(node_index(spec, 0.4), player_half) == 0.5);   // interior
  CHECK(spec.r_kernel(node_index(spec, 0.2), player_half) == 0.25);  // jump node
  CHECK(spec.r_kernel(node_index(spec, 0.8), player_half) == 0.25);  // jump node
  CHECK(spec.r_kernel(node_index(spec, 0.1), player_half) == 0.0);   // outside

  // A window edge clipped by the domain boundary is not a jump.
  CHECK(spec.r_kernel(0, node_index(spec, 0.2)) == 0.5);
  // The membership cap is a jump for players whose window crosses it.
  CHECK(spec.r_kernel(node_index(spec, 0.9), node_index(spec, 0.7)) == 0.25);

  // Without cooperation the windowed and uniform games coincide.
  const ContinuumLQSpec w0 = windowed_continuum_spec(0.0, 201, flat);
  const ContinuumLQSpec u0 = uniform_continuum_spec(0.0, 201, flat);
  CHECK((solve_continuum(w0).actions - solve_continuum(u0).actions)
            .lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("optimality defects shrink at second order under grid refinement") {
  const ContinuumLQSpec coarse = windowed_continuum_spec(0.5, 201, affine);
  const ContinuumLQSpec fine = windowed_continuum_spec(0.5, 401, affine);
  const double defect_coarse = pontryagin_residual(coarse, solve_continuum(coarse));
  const double defect_fine = pontryagin_residual(fine, solve_continuum(fine));
  CHECK(defect_coarse < 1e-5);
  CHECK(defect_coarse > 1e-9);  // a genuine discretization defect
  CHECK(defect_fine < defect_coarse);
  CHECK(defect_coarse / defect_fine >= 2.0);
}

TEST_CASE("continuum specification validation") {
  ContinuumLQSpec spec = uniform_continuum_spec(0.5, 5, flat);
  spec.xi_fn = nullptr;
  spec.r_fn = nullptr;
  spec.w_fn = nullptr;
  CHECK_NOTHROW(spec.validate());

  ContinuumLQSpec bad_grid = spec;
  std::swap(bad_grid.grid(1), bad_grid.grid(2));
  CHECK_THROWS_AS(bad_grid.validate(), std::invalid_argument);

  ContinuumLQSpec bad_xi = spec;
  bad_xi.xi(2) = -0.1;
  CHECK_THROWS_AS(bad_xi.validate(), std::invalid_argument);

  ContinuumLQSpec heavy = spec;
  heavy.r_kernel(1, 3) = heavy.p_density(1) + 0.001;
  CHECK_THROWS_AS(heavy.validate(), std::invalid_argument);

  ContinuumLQSpec bad_w = spec;
  bad_w.w_kernel(2, 2) = 0.0;
  CHECK_THROWS_AS(bad_w.validate(), std::invalid_argument);

  ContinuumLQSpec bad_quad = spec;
  bad_quad.quad_weights(0) = bad_quad.quad_weights(0) + 0.5;
  CHECK_THROWS_AS(bad_quad.validate(), std::invalid_argument);

  // Analytic callbacks must agree with the sampled arrays.
  ContinuumLQSpec mismatched = uniform_continuum_spec(0.5, 5, flat);
  mismatched.xi_fn = [](double) { return 2.0; };
  CHECK_THROWS_AS(mismatched.validate(), std::invalid_argument);
}
