#include "kantmfg/types.hpp"

#include <sstream>
#include <stdexcept>

namespace kantmfg {

namespace {

constexpr double kDistributionTol = 1e-12;
constexpr double kMeasureTol = 1e-12;

}  // namespace

FiniteTypeSpace::FiniteTypeSpace(std::vector<IndividualType> individual_types,
                                 std::vector<int> social_types,
                                 Eigen::VectorXd distribution)
    : individual_types_(std::move(individual_types)),
      social_types_(std::move(social_types)),
      distribution_(std::move(distribution)) {
  const auto n = static_cast<std::size_t>(distribution_.size());
  if (n == 0) throw std::invalid_argument("FiniteTypeSpace: empty type list");
  if (individual_types_.size() != n || social_types_.size() != n) {
    throw std::invalid_argument(
        "FiniteTypeSpace: individual/social type counts must match the distribution length");
  }
  double total = 0.0;
  for (Eigen::Index k = 0; k < distribution_.size(); ++k) {
    if (!(distribution_(k) > 0.0)) {
      throw std::invalid_argument("FiniteTypeSpace: every type mass must be positive");
    }
    total += distribution_(k);
  }
  if (std::abs(total - 1.0) > kDistributionTol) {
    std::ostringstream msg;
    msg << "FiniteTypeSpace: distribution sums to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }

  // Distinct individual types, ordered by first occurrence; equality is exact
  // so duplicated descriptors must be bitwise identical.
  sigma_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    int found = -1;
    for (std::size_t j = 0; j < representatives_.size(); ++j) {
      if (individual_types_[static_cast<std::size_t>(representatives_[j])] ==
          individual_types_[k]) {
        found = static_cast<int>(j);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(representatives_.size());
      representatives_.push_back(static_cast<int>(k));
    }
    sigma_[k] = found;
  }
}

GroupMeasure::GroupMeasure(const FiniteTypeSpace& space, Eigen::MatrixXd weights)
    : weights_(std::move(weights)) {
  const int n = space.count();
  if (weights_.rows() != n || weights_.cols() != n) {
    throw std::invalid_argument("GroupMeasure: weight matrix must be N x N");
  }
  masses_ = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const double r = weights_(k, j);
      if (!std::isfinite(r) || r < 0.0 || r > space.distribution()(j) + kMeasureTol) {
        std::ostringstream msg;
        msg << "GroupMeasure: entry (" << k << "," << j << ") = " << r
            << " violates 0 <= r <= p_j = " << space.distribution()(j);
        throw std::invalid_argument(msg.str());
      }
      masses_(k) += r;
    }
  }
}

GroupMeasure GroupMeasure::zero(const FiniteTypeSpace& space) {
  return GroupMeasure(space, Eigen::MatrixXd::Zero(space.count(), space.count()));
}

GroupMeasure GroupMeasure::full(const FiniteTypeSpace& space) {
  return uniform(space, 1.0);
}

GroupMeasure GroupMeasure::uniform(const FiniteTypeSpace& space, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("GroupMeasure::uniform: alpha must lie in [0, 1]");
  }
  const int n = space.count();
  Eigen::MatrixXd r(n, n);
  for (int k = 0; k < n; ++k) r.row(k) = alpha * space.distribution().transpose();
  return GroupMeasure(space, std::move(r));
}

GroupMeasure GroupMeasure::coalition(const FiniteTypeSpace& space,
                                     const std::vector<std::vector<int>>& blocks) {
  const int n = space.count();
  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int k : blocks[b]) {
      if (k < 0 || k >= n) {
        throw std::invalid_argument("GroupMeasure::coalition: type index out of range");
      }
      if (block_of[static_cast<std::size_t>(k)] != -1) {
        throw std::invalid_argument("GroupMeasure::coalition: type appears in two blocks");
      }
      block_of[static_cast<std::size_t>(k)] = static_cast<int>(b);
    }
  }
  for (int k = 0; k < n; ++k) {
    if (block_of[static_cast<std::size_t>(k)] == -1) {
      throw std::invalid_argument("GroupMeasure::coalition: blocks must cover every type");
    }
  }
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (block_of[static_cast<std::size_t>(j)] == block_of[static_cast<std::size_t>(k)]) {
        r(k, j) = space.distribution()(j);
      }
    }
  }
  return GroupMeasure(space, std::move(r));
}

WeightKernel::WeightKernel(const FiniteTypeSpace& space, const GroupMeasure& group,
                           Eigen::MatrixXd weights)
    : weights_(std::move(weights)) {
  const int n = space.count();
  if (weights_.rows() != n || weights_.cols() != n) {
    throw std::invalid_argument("WeightKernel: weight matrix must be N x N");
  }
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (group.weight(k, j) > 0.0 && !(weights_(k, j) > 0.0)) {
        std::ostringstream msg;
        msg << "WeightKernel: entry (" << k << "," << j
            << ") must be positive where the group measure puts mass";
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

WeightKernel WeightKernel::ones(const FiniteTypeSpace& space) {
  return WeightKernel(Eigen::MatrixXd::Ones(space.count(), space.count()));
}

}  // namespace kantmfg
