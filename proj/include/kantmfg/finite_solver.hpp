#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "kantmfg/game_model.hpp"
#include "kantmfg/group_cost.hpp"
#include "kantmfg/types.hpp"

namespace kantmfg {

struct SolverConfig {
  double tol = 1e-10;              // outer consistency / natural-map residual target
  int max_outer = 10000;           // outer iteration cap (fixed point and extragradient)
  double damping = 0.5;            // fixed-point damping factor in (0, 1]
  double inner_tol = 1e-12;        // projected-gradient residual target per best response
  int inner_max = 20000;           // projected-gradient iteration cap
  double extragradient_step = 0.1; // initial step, halved when the acceptance test fails
  int oracle_grid = 21;            // grid points per dimension for +-inf risk best responses
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = std::numeric_limits<double>::infinity();
  std::vector<double> residual_history;
};

struct BestResponse {
  Eigen::VectorXd actions;  // one per distinct individual type
  bool converged = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
};

/// Minimizes group_cost(k, . , star) over the action box with projected
/// gradient descent and backtracking line search, warm-started from star.
/// Finite beta only; +-inf risk attitudes go through the grid oracle.
BestResponse group_best_response(int k, const Eigen::VectorXd& star,
                                 const FiniteTypeSpace& space, const GameModel& model,
                                 const GroupMeasure& group, const WeightKernel& weights,
                                 RiskFactor beta, const SolverConfig& cfg = {});

/// Damped best-response iteration from the box midpoint:
///   star <- (1 - damping) star + damping * diag of per-type best responses.
/// Converged when max_k |star_k - best_response_k| <= tol.  With beta = +-inf
/// the inner best responses are solved by grid search (see oracle module).
std::pair<EquilibriumProfile, SolveReport> fixed_point_solve(
    const FiniteTypeSpace& space, const GameModel& model, const GroupMeasure& group,
    const WeightKernel& weights, RiskFactor beta, const SolverConfig& cfg = {});

/// Stacked map whose box-constrained variational inequality characterizes
/// equilibria: N rows of grad_group_cost (one per player, N' entries each)
/// followed by the N consistency gaps star_k - group_actions(k, sigma(k)).
Eigen::VectorXd vi_map(const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star,
                       const FiniteTypeSpace& space, const GameModel& model,
                       const GroupMeasure& group, const WeightKernel& weights,
                       RiskFactor beta);

/// Natural-map residual || z - clamp(z - step F(z)) ||_inf of the stacked
/// variables z = (group_actions, star); zero exactly at VI solutions.
double vi_residual(const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star,
                   double step, const FiniteTypeSpace& space, const GameModel& model,
                   const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta);

/// Extragradient iteration (predictor/corrector projections) on the stacked
/// VI, with the step halved whenever the predictor moves faster than the map's
/// local Lipschitz estimate allows.  Convergence is declared on vi_residual
/// evaluated at the configured reference step; a residual that grows tenfold
/// over a 100-iteration window aborts with converged = false.
std::pair<EquilibriumProfile, SolveReport> extragradient_solve(
    const FiniteTypeSpace& space, const GameModel& model, const GroupMeasure& group,
    const WeightKernel& weights, RiskFactor beta, const SolverConfig& cfg = {});

struct MonotonicityProbe {
  double min_value = 0.0;  // smallest sampled (F(z') - F(z)) . (z' - z) / |z' - z|^2
  bool certificate = false;
};

/// Samples pairs of stacked points uniformly in the box and reports the
/// smallest directional quotient of the VI map.  A positive minimum is
/// sampled evidence (not proof) of monotonicity, hence of uniqueness of the
/// VI solution; deterministic for a fixed seed.
MonotonicityProbe monotonicity_probe(const FiniteTypeSpace& space, const GameModel& model,
                                     const GroupMeasure& group, const WeightKernel& weights,
                                     RiskFactor beta, int samples, unsigned seed);

struct DirectSolve {
  Eigen::VectorXd actions;  // per type-pair equilibrium actions (length N)
  double residual = 0.0;    // sup-norm residual of the assembled linear system
};

/// Closed-form equilibrium of the quadratic family under the uniform group
/// measure alpha * p with mean aggregation and unit weights: solves
///   (2 diag(p a) + (1 + alpha) l l^T) u = l,  l_k = p_k b_k.
DirectSolve quadratic_rkn_direct(const FiniteTypeSpace& space,
                                 const QuadraticFishingModel& model, double alpha);

struct HrknSolution {
  Eigen::VectorXd equilibrium;     // consistent per-type actions (length N)
  Eigen::VectorXd class1_profile;  // imagined profile of the first perception class
  Eigen::VectorXd class2_profile;  // imagined profile of the second perception class
  double residual = 0.0;           // sup-norm residual of the 3N x 3N block system
};

/// Equilibrium when group strategies may only depend on the coarsened type
/// (member efficiency, own effort weight): players split into two perception
/// classes by effort weight; each class c imagines every member paying its own
/// effort weight a_c, giving the block system
///   [ 2(S_1 + alpha l l^T)      0              (1-alpha) l l^T ] [u1]   [l]
///   [ 0                         2(S_2 + ...)   (1-alpha) l l^T ] [u2] = [l]
///   [ P_1                       P_2            -I              ] [u ]   [0]
/// with S_c = a_c diag(p) and P_c selecting each class's own rows.
HrknSolution quadratic_hrkn_direct(const FiniteTypeSpace& space,
                                   const QuadraticFishingModel& model, double alpha);

enum class SpecialCase { Nash, Harsanyi, Rawls, BestOff };

struct SpecialCaseSetup {
  GroupMeasure group;
  WeightKernel weights;
  RiskFactor risk;
};

/// Canonical cooperation modes: Nash (empty groups, mean), Harsanyi (full
/// groups, mean), Rawls (full groups, worst case), BestOff (full groups, best
/// case); all with unit importance weights.
SpecialCaseSetup build_special_case(SpecialCase kind, const FiniteTypeSpace& space);
/// Coalition mode: each player's group is her partition block weighted by p.
SpecialCaseSetup build_coalition_case(const FiniteTypeSpace& space,
                                      const std::vector<std::vector<int>>& blocks);
/// Uniform partial cooperation: groups alpha * p, mean aggregation.
SpecialCaseSetup build_uniform_case(const FiniteTypeSpace& space, double alpha);

}  // namespace kantmfg
