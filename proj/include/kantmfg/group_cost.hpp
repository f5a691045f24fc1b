#pragma once

#include <Eigen/Dense>

#include "kantmfg/game_model.hpp"
#include "kantmfg/types.hpp"

namespace kantmfg {

/// Population statistic sum_k p_k * aggregate(profile_k, k) induced by a
/// profile of per-type actions (length N).
double aggregate_statistic(const Eigen::VectorXd& profile, const FiniteTypeSpace& space,
                           const GameModel& model);

/// Risk-sensitive aggregation of member values under nonnegative masses.
/// Masses are normalized to a probability vector q internally, so the result
/// interpolates between the weighted mean (beta = 0), the max over the support
/// (beta = +inf) and the min (beta = -inf); finite nonzero beta evaluates the
/// max-shifted log-sum-exp (1/beta) log sum_i q_i exp(beta v_i).  Rescaling
/// all masses by a positive constant leaves the result unchanged.
double risk_aggregate(const Eigen::VectorXd& values, const Eigen::VectorXd& masses,
                      RiskFactor beta);

/// Population statistic player k expects when her virtual group (row k of r)
/// switches to the strategy group_actions (one action per distinct individual
/// type) while everyone else keeps the profile star:
///   sum_k'' aggregate(star_k'', k'') (p_k'' - r_kk'')
///        + aggregate(group_actions_{sigma(k'')}, k'') r_kk''.
double group_mean_field(int k, const Eigen::VectorXd& group_actions,
                        const Eigen::VectorXd& star, const FiniteTypeSpace& space,
                        const GameModel& model, const GroupMeasure& group);

/// Risk-aggregated importance-weighted cost of player k's virtual group under
/// the imagined strategy group_actions, with the rest of the population at
/// star.  A zero-mass row degenerates to the singleton group {k}: the return
/// is the player's own cost at her candidate action group_actions_{sigma(k)}
/// against the unperturbed statistic of star.
double group_cost(int k, const Eigen::VectorXd& group_actions, const Eigen::VectorXd& star,
                  const FiniteTypeSpace& space, const GameModel& model,
                  const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta);

/// Gradient of group_cost with respect to group_actions (length N').
/// Requires finite beta; the +-inf aggregates are piecewise and handled by
/// grid search in the oracle module instead.
///
/// If the planner's group is nonempty but contains no mass of her own
/// distinct type, her own coordinate would otherwise have an identically
/// zero gradient and the stationarity system would leave her action
/// undetermined.  In that case the coordinate is pinned to the stationarity
/// of an own-type member with vanishing mass, which selects the natural
/// limit equilibrium without changing the cost itself.
Eigen::VectorXd grad_group_cost(int k, const Eigen::VectorXd& group_actions,
                                const Eigen::VectorXd& star, const FiniteTypeSpace& space,
                                const GameModel& model, const GroupMeasure& group,
                                const WeightKernel& weights, RiskFactor beta);

}  // namespace kantmfg
