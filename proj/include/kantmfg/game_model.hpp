#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <functional>

#include "kantmfg/types.hpp"

namespace kantmfg {

/// Per-type stage game: a player of type k choosing action u while the
/// population statistic is ubar pays cost(u, ubar, k); her contribution to the
/// statistic is aggregate(u, k).  Actions live in the box
/// [action_lo, action_hi] (scalar actions throughout).  Derivative callbacks
/// must match the cost/aggregate callbacks; gradient-based solvers rely on
/// them.
struct GameModel {
  std::function<double(double u, double ubar, int k)> cost;
  std::function<double(double u, double ubar, int k)> cost_du;
  std::function<double(double u, double ubar, int k)> cost_dubar;
  std::function<double(double u, int k)> aggregate;
  std::function<double(double u, int k)> aggregate_du;
  double action_lo = 0.0;
  double action_hi = 1.0;

  double clamp(double u) const { return std::min(action_hi, std::max(action_lo, u)); }
  double midpoint() const { return 0.5 * (action_lo + action_hi); }
};

/// Quadratic harvesting family: type k pays
///   cost(u, ubar, k) = a_k u^2 - (1 - ubar) b_k u
/// and contributes aggregate(u, k) = b_k u to the population statistic
/// (a = effort weight, b = efficiency).  Convex in u whenever a_k > 0.
struct QuadraticFishingModel {
  Eigen::VectorXd effort_weight;  // a_k
  Eigen::VectorXd efficiency;     // b_k
  double action_lo = 0.0;
  double action_hi = 1.0;

  QuadraticFishingModel(Eigen::VectorXd a, Eigen::VectorXd b, double lo = 0.0,
                        double hi = 1.0);

  int count() const { return static_cast<int>(effort_weight.size()); }
  GameModel game_model() const;
};

}  // namespace kantmfg
