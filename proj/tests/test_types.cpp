#include <doctest.h>

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "kantmfg/types.hpp"

using namespace kantmfg;

namespace {

FiniteTypeSpace shared_individual_types() {
  // Two type pairs share the same individual descriptor but differ socially.
  return FiniteTypeSpace({{1.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}}, {0, 1, 0},
                         Eigen::Vector3d(0.2, 0.3, 0.5));
}

}  // namespace

TEST_CASE("type pairs sharing an individual descriptor collapse to one strategy slot") {
  const FiniteTypeSpace space = shared_individual_types();
  CHECK(space.count() == 3);
  CHECK(space.distinct_count() == 2);
  CHECK(space.sigma(0) == 0);
  CHECK(space.sigma(1) == 0);
  CHECK(space.sigma(2) == 1);
  CHECK(space.representative(0) == 0);
  CHECK(space.representative(1) == 2);
}

TEST_CASE("type space validation") {
  CHECK_THROWS_AS(FiniteTypeSpace({}, {}, Eigen::VectorXd()), std::invalid_argument);
  CHECK_THROWS_AS(FiniteTypeSpace({{1.0, 1.0}}, {0, 1}, Eigen::VectorXd::Ones(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      FiniteTypeSpace({{1.0, 1.0}, {2.0, 1.0}}, {0, 0}, Eigen::Vector2d(0.5, -0.5)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      FiniteTypeSpace({{1.0, 1.0}, {2.0, 1.0}}, {0, 0}, Eigen::Vector2d(0.5, 0.6)),
      std::invalid_argument);
}

TEST_CASE("group measures enforce the sub-probability bounds") {
  const FiniteTypeSpace space = shared_individual_types();
  const Eigen::VectorXd& p = space.distribution();

  const GroupMeasure zero = GroupMeasure::zero(space);
  const GroupMeasure full = GroupMeasure::full(space);
  const GroupMeasure half = GroupMeasure::uniform(space, 0.5);
  for (int k = 0; k < space.count(); ++k) {
    CHECK(zero.mass(k) == 0.0);
    CHECK(full.mass(k) == doctest::Approx(1.0).epsilon(1e-15));
    for (int j = 0; j < space.count(); ++j) {
      CHECK(zero.weight(k, j) == 0.0);
      CHECK(full.weight(k, j) == p(j));
      CHECK(half.weight(k, j) == doctest::Approx(0.5 * p(j)).epsilon(1e-15));
    }
  }

  Eigen::MatrixXd too_heavy = Eigen::MatrixXd::Zero(3, 3);
  too_heavy(0, 2) = p(2) + 0.1;
  CHECK_THROWS_AS(GroupMeasure(space, too_heavy), std::invalid_argument);
  Eigen::MatrixXd negative = Eigen::MatrixXd::Zero(3, 3);
  negative(1, 0) = -0.01;
  CHECK_THROWS_AS(GroupMeasure(space, negative), std::invalid_argument);
  CHECK_THROWS_AS(GroupMeasure(space, Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(GroupMeasure::uniform(space, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(GroupMeasure::uniform(space, -0.2), std::invalid_argument);
}

TEST_CASE("coalition group measures restrict the distribution to each block") {
  const FiniteTypeSpace space = shared_individual_types();
  const Eigen::VectorXd& p = space.distribution();
  const GroupMeasure coalition = GroupMeasure::coalition(space, {{0, 2}, {1}});

  CHECK(coalition.weight(0, 0) == p(0));
  CHECK(coalition.weight(0, 1) == 0.0);
  CHECK(coalition.weight(0, 2) == p(2));
  CHECK(coalition.weight(2, 0) == p(0));
  CHECK(coalition.weight(1, 1) == p(1));
  CHECK(coalition.weight(1, 0) == 0.0);
  CHECK(coalition.mass(0) == doctest::Approx(p(0) + p(2)).epsilon(1e-15));
  CHECK(coalition.mass(1) == doctest::Approx(p(1)).epsilon(1e-15));

  CHECK_THROWS_AS(GroupMeasure::coalition(space, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupMeasure::coalition(space, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(GroupMeasure::coalition(space, {{0, 1}, {2, 3}}), std::invalid_argument);
}

TEST_CASE("weight kernels must be positive wherever the group puts mass") {
  const FiniteTypeSpace space = shared_individual_types();
  const GroupMeasure half = GroupMeasure::uniform(space, 0.5);

  const WeightKernel ones = WeightKernel::ones(space);
  CHECK(ones.weight(1, 2) == 1.0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(3, 3);
  bad(0, 1) = 0.0;  // zero weight on a supported member
  CHECK_THROWS_AS(WeightKernel(space, half, bad), std::invalid_argument);

  // The same matrix is fine when the member carries no group mass.
  const GroupMeasure zero = GroupMeasure::zero(space);
  CHECK_NOTHROW(WeightKernel(space, zero, bad));
  CHECK_THROWS_AS(WeightKernel(space, half, Eigen::MatrixXd::Ones(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("risk factor classification") {
  CHECK(RiskFactor::mean().beta == 0.0);
  CHECK(RiskFactor::mean().is_finite());
  CHECK(!RiskFactor::worst_case().is_finite());
  CHECK(!RiskFactor::best_case().is_finite());
  CHECK(RiskFactor{2.5}.is_finite());
}
