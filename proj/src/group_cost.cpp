#include "kantmfg/group_cost.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kantmfg {

namespace {

void check_profile(const Eigen::VectorXd& profile, const FiniteTypeSpace& space,
                   const char* what) {
  if (profile.size() != space.count()) {
    throw std::invalid_argument(std::string(what) +
                                ": profile length must equal the number of types");
  }
}

void check_group_actions(const Eigen::VectorXd& group_actions,
                         const FiniteTypeSpace& space, const char* what) {
  if (group_actions.size() != space.distinct_count()) {
    throw std::invalid_argument(
        std::string(what) +
        ": group strategy must carry one action per distinct individual type");
  }
}

void check_type_index(int k, const FiniteTypeSpace& space, const char* what) {
  if (k < 0 || k >= space.count()) {
    throw std::invalid_argument(std::string(what) + ": type index out of range");
  }
}

}  // namespace

double aggregate_statistic(const Eigen::VectorXd& profile, const FiniteTypeSpace& space,
                           const GameModel& model) {
  check_profile(profile, space, "aggregate_statistic");
  double total = 0.0;
  for (int k = 0; k < space.count(); ++k) {
    total += space.distribution()(k) * model.aggregate(profile(k), k);
  }
  return total;
}

double risk_aggregate(const Eigen::VectorXd& values, const Eigen::VectorXd& masses,
                      RiskFactor beta) {
  if (values.size() != masses.size() || values.size() == 0) {
    throw std::invalid_argument("risk_aggregate: values and masses must be nonempty and equal length");
  }
  double total_mass = 0.0;
  for (Eigen::Index i = 0; i < masses.size(); ++i) {
    const double m = masses(i);
    if (!std::isfinite(m) || m < 0.0) {
      throw std::invalid_argument("risk_aggregate: masses must be finite and nonnegative");
    }
    if (beta.is_finite() && m > 0.0 && !std::isfinite(values(i))) {
      throw std::invalid_argument("risk_aggregate: non-finite value on the support with finite beta");
    }
    total_mass += m;
  }
  if (!(total_mass > 0.0)) {
    throw std::domain_error("risk_aggregate: degenerate group, all masses are zero");
  }

  if (beta.beta == std::numeric_limits<double>::infinity()) {
    double worst = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (masses(i) > 0.0) worst = std::max(worst, values(i));
    }
    return worst;
  }
  if (beta.beta == -std::numeric_limits<double>::infinity()) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (masses(i) > 0.0) best = std::min(best, values(i));
    }
    return best;
  }
  if (beta.beta == 0.0) {
    double mean = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (masses(i) > 0.0) mean += (masses(i) / total_mass) * values(i);
    }
    return mean;
  }

  // Shifted log-sum-exp through expm1/log1p: with the shift at the supported
  // max (min for beta < 0) every exponent is <= 0 and the beta -> 0 limit is
  // reproduced to ~1e-16 * spread instead of ~1e-16 / beta.
  double shift = (beta.beta > 0.0) ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (masses(i) <= 0.0) continue;
    shift = (beta.beta > 0.0) ? std::max(shift, values(i)) : std::min(shift, values(i));
  }
  double accum = 0.0;  // sum q_i expm1(beta (v_i - shift)), in (-1, 0]
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (masses(i) <= 0.0) continue;
    accum += (masses(i) / total_mass) * std::expm1(beta.beta * (values(i) - shift));
  }
  return shift + std::log1p(accum) / beta.beta;
}

double group_mean_field(int k, const Eigen::VectorXd& group_actions,
                        const Eigen::VectorXd& star, const FiniteTypeSpace& space,
                        const GameModel& model, const GroupMeasure& group) {
  check_type_index(k, space, "group_mean_field");
  check_profile(star, space, "group_mean_field");
  check_group_actions(group_actions, space, "group_mean_field");
  double total = 0.0;
  for (int j = 0; j < space.count(); ++j) {
    const double r = group.weight(k, j);
    total += model.aggregate(star(j), j) * (space.distribution()(j) - r);
    if (r > 0.0) total += model.aggregate(group_actions(space.sigma(j)), j) * r;
  }
  return total;
}

double group_cost(int k, const Eigen::VectorXd& group_actions, const Eigen::VectorXd& star,
                  const FiniteTypeSpace& space, const GameModel& model,
                  const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta) {
  check_type_index(k, space, "group_cost");
  check_profile(star, space, "group_cost");
  check_group_actions(group_actions, space, "group_cost");

  if (group.mass(k) == 0.0) {
    // Singleton group: the candidate's own cost against the population
    // statistic of star (an individual deviation does not move the statistic).
    const double ubar = aggregate_statistic(star, space, model);
    return model.cost(group_actions(space.sigma(k)), ubar, k);
  }

  const double ubar = group_mean_field(k, group_actions, star, space, model, group);
  Eigen::VectorXd member_costs(space.count());
  for (int j = 0; j < space.count(); ++j) {
    member_costs(j) = (group.weight(k, j) > 0.0)
                          ? weights.weight(k, j) *
                                model.cost(group_actions(space.sigma(j)), ubar, j)
                          : 0.0;
  }
  return risk_aggregate(member_costs, group.weights().row(k).transpose(), beta);
}

Eigen::VectorXd grad_group_cost(int k, const Eigen::VectorXd& group_actions,
                                const Eigen::VectorXd& star, const FiniteTypeSpace& space,
                                const GameModel& model, const GroupMeasure& group,
                                const WeightKernel& weights, RiskFactor beta) {
  check_type_index(k, space, "grad_group_cost");
  check_profile(star, space, "grad_group_cost");
  check_group_actions(group_actions, space, "grad_group_cost");
  if (!beta.is_finite()) {
    throw std::invalid_argument(
        "grad_group_cost: beta = +-inf aggregates are not differentiable; use the grid oracle");
  }

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(space.distinct_count());

  if (group.mass(k) == 0.0) {
    const double ubar = aggregate_statistic(star, space, model);
    grad(space.sigma(k)) = model.cost_du(group_actions(space.sigma(k)), ubar, k);
    return grad;
  }

  const double ubar = group_mean_field(k, group_actions, star, space, model, group);

  // Aggregation weights s_j: the softmax tilt of the normalized masses (the
  // masses themselves when beta = 0).
  const double mass = group.mass(k);
  Eigen::VectorXd member_costs = Eigen::VectorXd::Zero(space.count());
  Eigen::VectorXd s = Eigen::VectorXd::Zero(space.count());
  double shift = 0.0;  // softmax shift and normalizer, reused for the
  double norm = mass;  // vanishing-self-weight limit below
  if (beta.beta == 0.0) {
    for (int j = 0; j < space.count(); ++j) s(j) = group.weight(k, j) / mass;
  } else {
    shift = (beta.beta > 0.0) ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::infinity();
    for (int j = 0; j < space.count(); ++j) {
      if (group.weight(k, j) <= 0.0) continue;
      member_costs(j) =
          weights.weight(k, j) * model.cost(group_actions(space.sigma(j)), ubar, j);
      shift = (beta.beta > 0.0) ? std::max(shift, member_costs(j))
                                : std::min(shift, member_costs(j));
    }
    norm = 0.0;
    for (int j = 0; j < space.count(); ++j) {
      if (group.weight(k, j) <= 0.0) continue;
      s(j) = group.weight(k, j) * std::exp(beta.beta * (member_costs(j) - shift));
      norm += s(j);
    }
    s /= norm;
  }

  // d ubar / d group_actions_i, accumulated over members sharing the i-th
  // distinct individual type.
  Eigen::VectorXd dubar = Eigen::VectorXd::Zero(space.distinct_count());
  for (int j = 0; j < space.count(); ++j) {
    const double r = group.weight(k, j);
    if (r > 0.0) dubar(space.sigma(j)) += r * model.aggregate_du(group_actions(space.sigma(j)), j);
  }

  double indirect = 0.0;  // sum_j s_j w_kj dcost/dubar at member j
  for (int j = 0; j < space.count(); ++j) {
    if (group.weight(k, j) <= 0.0) continue;
    const double wkj = weights.weight(k, j);
    const double u = group_actions(space.sigma(j));
    grad(space.sigma(j)) += s(j) * wkj * model.cost_du(u, ubar, j);
    indirect += s(j) * wkj * model.cost_dubar(u, ubar, j);
  }
  grad += indirect * dubar;

  // When the planner's own distinct class carries no group mass (the group is
  // nonempty but contains nobody of her type), the coordinate holding her own
  // action never enters the cost and its gradient would vanish identically,
  // leaving that action unconstrained.  Pin it with the limit of an own-type
  // member whose mass shrinks to zero: the member's stationarity condition
  // survives the limit even though her contribution to the cost does not.
  // Rescaling a single gradient coordinate by a positive factor preserves the
  // solution set of the projected stationarity system, so the softmax scale
  // chosen here affects conditioning only, never the equilibria.
  const int own = space.sigma(k);
  double own_class_mass = 0.0;
  for (int j = 0; j < space.count(); ++j) {
    if (space.sigma(j) == own) own_class_mass += group.weight(k, j);
  }
  if (own_class_mass <= 0.0) {
    const double u_own = group_actions(own);
    const double w_self = (weights.weight(k, k) > 0.0) ? weights.weight(k, k) : 1.0;
    double phantom = 1.0 / norm;
    if (beta.beta != 0.0) {
      const double c_own = w_self * model.cost(u_own, ubar, k);
      phantom = std::exp(std::min(beta.beta * (c_own - shift), 700.0)) / norm;
    }
    grad(own) = phantom * w_self * model.cost_du(u_own, ubar, k) +
                indirect * model.aggregate_du(u_own, k);
  }
  return grad;
}

}  // namespace kantmfg
