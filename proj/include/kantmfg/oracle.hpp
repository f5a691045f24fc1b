#pragma once

#include <Eigen/Dense>

#include "kantmfg/finite_solver.hpp"
#include "kantmfg/game_model.hpp"
#include "kantmfg/lq_continuum.hpp"
#include "kantmfg/types.hpp"

namespace kantmfg {

/// Exhaustive minimizer of group_cost(k, ., star) over the action box:
/// a full grid of grid_n points per dimension followed by five shrinking
/// local refinements (21-point subgrids around the incumbent, spacing / 10
/// per round), first-found lexicographic tie-break.  Works for any beta,
/// including +-inf; deterministic.
Eigen::VectorXd brute_force_group_min(int k, const Eigen::VectorXd& star,
                                      const FiniteTypeSpace& space, const GameModel& model,
                                      const GroupMeasure& group, const WeightKernel& weights,
                                      RiskFactor beta, int grid_n = 21);

/// Grid minimizer of the population mean cost sum_k p_k cost(u_{sigma(k)},
/// ubar(u), k) over profiles of distinct-type actions (length N').
Eigen::VectorXd brute_force_social_opt(const FiniteTypeSpace& space, const GameModel& model,
                                       int grid_n = 21);

/// Grid minimizer of the worst per-type cost max_k cost(u_{sigma(k)}, ubar(u), k)
/// over profiles of distinct-type actions (length N').
Eigen::VectorXd brute_force_minimax(const FiniteTypeSpace& space, const GameModel& model,
                                    int grid_n = 21);

/// Cross-validates the continuum pipeline against the finite-type solver:
/// samples the continuum game on an n_types-point grid (masses = quadrature
/// weights, membership = kernel density times member mass), solves the finite
/// game with the extragradient method, and returns the sup-norm deviation
/// from the continuum solution of `spec` (linearly interpolated at the
/// sampled type points).  Requires w == 1 and analytic kernels on spec.
double discretized_continuum_crosscheck(const ContinuumLQSpec& spec, int n_types,
                                        const SolverConfig& cfg = {});

}  // namespace kantmfg
