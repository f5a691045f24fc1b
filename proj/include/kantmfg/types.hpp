#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace kantmfg {

/// One population of players described by finitely many type pairs.
///
/// Each player carries an individual type x_k (a fixed-length feature vector;
/// two entries cover every built-in game: effort weight and efficiency) and a
/// social type theta_k (an integer label).  p is the distribution over the N
/// type pairs.  Several type pairs may share the same individual type while
/// differing in social type; sigma(k) maps a type pair to the index of its
/// distinct individual type (N' of them), which is the dimension strategy
/// vectors are parameterized over.
class FiniteTypeSpace {
 public:
  using IndividualType = std::array<double, 2>;

  FiniteTypeSpace(std::vector<IndividualType> individual_types,
                  std::vector<int> social_types, Eigen::VectorXd distribution);

  int count() const { return static_cast<int>(distribution_.size()); }
  int distinct_count() const { return static_cast<int>(representatives_.size()); }

  const std::vector<IndividualType>& individual_types() const { return individual_types_; }
  const std::vector<int>& social_types() const { return social_types_; }
  const Eigen::VectorXd& distribution() const { return distribution_; }

  /// Index of k's distinct individual type, in [0, distinct_count()).
  int sigma(int k) const { return sigma_[k]; }
  /// First type-pair index whose individual type is the j-th distinct one.
  int representative(int j) const { return representatives_[j]; }

 private:
  std::vector<IndividualType> individual_types_;
  std::vector<int> social_types_;
  Eigen::VectorXd distribution_;
  std::vector<int> sigma_;
  std::vector<int> representatives_;
};

/// Sub-probability measure describing, for each player type, the virtual
/// group she imagines commanding.  Row k gives the mass r_{kk'} placed on
/// members of type k'; the sub-probability condition 0 <= r_{kk'} <= p_{k'}
/// is enforced at construction.
class GroupMeasure {
 public:
  GroupMeasure(const FiniteTypeSpace& space, Eigen::MatrixXd weights);

  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(int k, int member) const { return weights_(k, member); }
  /// Total group mass m_k of row k; m_k = 0 means the group is the singleton {k}.
  double mass(int k) const { return masses_(k); }
  const Eigen::VectorXd& masses() const { return masses_; }

  /// Empty groups for every player (individually rational play).
  static GroupMeasure zero(const FiniteTypeSpace& space);
  /// Every row equals p (each player imagines steering the whole population).
  static GroupMeasure full(const FiniteTypeSpace& space);
  /// Every row equals alpha * p, alpha in [0, 1].
  static GroupMeasure uniform(const FiniteTypeSpace& space, double alpha);
  /// Row k restricts p to the block of the partition containing k, so the
  /// normalized member weights are p conditioned on k's block.
  static GroupMeasure coalition(const FiniteTypeSpace& space,
                                const std::vector<std::vector<int>>& blocks);

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd masses_;
};

/// Importance weights w_{kk'} a player of type k assigns to the cost of group
/// members of type k'.  Must be strictly positive wherever the group measure
/// puts mass.
class WeightKernel {
 public:
  WeightKernel(const FiniteTypeSpace& space, const GroupMeasure& group,
               Eigen::MatrixXd weights);

  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(int k, int member) const { return weights_(k, member); }

  /// Unit weights (valid for any group measure).
  static WeightKernel ones(const FiniteTypeSpace& space);

 private:
  explicit WeightKernel(Eigen::MatrixXd weights) : weights_(std::move(weights)) {}
  Eigen::MatrixXd weights_;
};

/// Risk attitude used when aggregating member costs: beta = 0 averages,
/// beta = +inf keeps the worst member cost, beta = -inf the best, and finite
/// nonzero beta interpolates exponentially.
struct RiskFactor {
  double beta = 0.0;

  bool is_finite() const { return std::isfinite(beta); }

  static RiskFactor mean() { return {0.0}; }
  static RiskFactor worst_case() { return {std::numeric_limits<double>::infinity()}; }
  static RiskFactor best_case() { return {-std::numeric_limits<double>::infinity()}; }
};

/// Solver output: star holds each type's own equilibrium action (length N);
/// group_actions row k holds the strategy player k imagines for her group,
/// one action per distinct individual type (N x N').  At an equilibrium
/// star(k) == group_actions(k, sigma(k)) within solver tolerance.
struct EquilibriumProfile {
  Eigen::VectorXd star;
  Eigen::MatrixXd group_actions;
};

}  // namespace kantmfg
