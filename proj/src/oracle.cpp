#include "kantmfg/oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kantmfg/group_cost.hpp"

namespace kantmfg {

namespace {

/// Exhaustive minimization over the box [lo, hi]^dim: one full grid pass with
/// grid_n points per axis, then five local refinements on 21-point subgrids
/// spanning one previous spacing around the incumbent.  Ties keep the first
/// point found in lexicographic order (axis 0 slowest).
Eigen::VectorXd grid_minimize(int dim, double lo, double hi, int grid_n,
                              const std::function<double(const Eigen::VectorXd&)>& objective) {
  if (dim <= 0) throw std::invalid_argument("grid_minimize: dimension must be positive");
  if (dim > 3) {
    throw std::invalid_argument(
        "grid_minimize: exhaustive search supports at most three distinct types");
  }
  if (grid_n < 2) throw std::invalid_argument("grid_minimize: need at least two grid points");

  std::vector<Eigen::VectorXd> axes(static_cast<std::size_t>(dim),
                                    Eigen::VectorXd::LinSpaced(grid_n, lo, hi));
  Eigen::VectorXd best;
  double best_value = std::numeric_limits<double>::infinity();

  auto sweep = [&]() {
    std::vector<int> idx(static_cast<std::size_t>(dim), 0);
    Eigen::VectorXd point(dim);
    while (true) {
      for (int d = 0; d < dim; ++d) point(d) = axes[static_cast<std::size_t>(d)](idx[static_cast<std::size_t>(d)]);
      const double value = objective(point);
      if (value < best_value) {
        best_value = value;
        best = point;
      }
      int d = dim - 1;
      while (d >= 0) {
        if (++idx[static_cast<std::size_t>(d)] < axes[static_cast<std::size_t>(d)].size()) break;
        idx[static_cast<std::size_t>(d)] = 0;
        --d;
      }
      if (d < 0) break;
    }
  };

  sweep();
  std::vector<double> spacing(static_cast<std::size_t>(dim), (hi - lo) / (grid_n - 1));
  for (int round = 0; round < 5; ++round) {
    for (int d = 0; d < dim; ++d) {
      const double a = std::max(lo, best(d) - spacing[static_cast<std::size_t>(d)]);
      const double b = std::min(hi, best(d) + spacing[static_cast<std::size_t>(d)]);
      axes[static_cast<std::size_t>(d)] = Eigen::VectorXd::LinSpaced(21, a, b);
      spacing[static_cast<std::size_t>(d)] = (b - a) / 20.0;
    }
    sweep();
  }
  return best;
}

double interp_linear(const Eigen::VectorXd& grid, const Eigen::VectorXd& values, double x) {
  const Eigen::Index n = grid.size();
  if (x <= grid(0)) return values(0);
  if (x >= grid(n - 1)) return values(n - 1);
  Eigen::Index hi = 1;
  while (grid(hi) < x) ++hi;
  const double span = grid(hi) - grid(hi - 1);
  const double t = span > 0.0 ? (x - grid(hi - 1)) / span : 0.0;
  return (1.0 - t) * values(hi - 1) + t * values(hi);
}

}  // namespace

Eigen::VectorXd brute_force_group_min(int k, const Eigen::VectorXd& star,
                                      const FiniteTypeSpace& space, const GameModel& model,
                                      const GroupMeasure& group, const WeightKernel& weights,
                                      RiskFactor beta, int grid_n) {
  if (k < 0 || k >= space.count() || star.size() != space.count()) {
    throw std::invalid_argument("brute_force_group_min: bad player index or profile size");
  }
  return grid_minimize(space.distinct_count(), model.action_lo, model.action_hi, grid_n,
                       [&](const Eigen::VectorXd& v) {
                         return group_cost(k, v, star, space, model, group, weights, beta);
                       });
}

Eigen::VectorXd brute_force_social_opt(const FiniteTypeSpace& space, const GameModel& model,
                                       int grid_n) {
  const Eigen::VectorXd& p = space.distribution();
  return grid_minimize(space.distinct_count(), model.action_lo, model.action_hi, grid_n,
                       [&](const Eigen::VectorXd& v) {
                         double ubar = 0.0;
                         for (int k = 0; k < space.count(); ++k) {
                           ubar += p(k) * model.aggregate(v(space.sigma(k)), k);
                         }
                         double total = 0.0;
                         for (int k = 0; k < space.count(); ++k) {
                           total += p(k) * model.cost(v(space.sigma(k)), ubar, k);
                         }
                         return total;
                       });
}

Eigen::VectorXd brute_force_minimax(const FiniteTypeSpace& space, const GameModel& model,
                                    int grid_n) {
  const Eigen::VectorXd& p = space.distribution();
  return grid_minimize(space.distinct_count(), model.action_lo, model.action_hi, grid_n,
                       [&](const Eigen::VectorXd& v) {
                         double ubar = 0.0;
                         for (int k = 0; k < space.count(); ++k) {
                           ubar += p(k) * model.aggregate(v(space.sigma(k)), k);
                         }
                         double worst = -std::numeric_limits<double>::infinity();
                         for (int k = 0; k < space.count(); ++k) {
                           worst = std::max(worst, model.cost(v(space.sigma(k)), ubar, k));
                         }
                         return worst;
                       });
}

double discretized_continuum_crosscheck(const ContinuumLQSpec& spec, int n_types,
                                        const SolverConfig& cfg) {
  spec.validate();
  if (!spec.has_analytic_kernels()) {
    throw std::invalid_argument(
        "discretized_continuum_crosscheck: spec needs analytic kernel callbacks");
  }
  if ((spec.w_kernel.array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(
        "discretized_continuum_crosscheck: requires unit importance weights");
  }
  if (n_types < 2) {
    throw std::invalid_argument("discretized_continuum_crosscheck: need at least two types");
  }

  const ContinuumCandidate continuum = solve_continuum(spec);

  // Sample the continuum game as a finite-type game: each grid point becomes
  // a type whose mass is its quadrature weight.  The position is part of the
  // type descriptor so types with equal efficiency stay distinct.
  const Eigen::VectorXd tg = Eigen::VectorXd::LinSpaced(n_types, 0.0, 1.0);
  Eigen::VectorXd masses(n_types);
  const double h = 1.0 / (n_types - 1);
  for (int k = 0; k < n_types; ++k) {
    masses(k) = (k == 0 || k == n_types - 1) ? 0.5 * h : h;
  }

  std::vector<std::array<double, 2>> descriptors;
  std::vector<int> social(static_cast<std::size_t>(n_types), 0);
  Eigen::VectorXd a = Eigen::VectorXd::Ones(n_types);
  Eigen::VectorXd b(n_types);
  for (int k = 0; k < n_types; ++k) {
    b(k) = spec.xi_fn(tg(k));
    descriptors.push_back({tg(k), b(k)});
  }
  const FiniteTypeSpace space(descriptors, social, masses);
  const QuadraticFishingModel qmodel(a, b);

  Eigen::MatrixXd r(n_types, n_types);
  for (int k = 0; k < n_types; ++k) {
    for (int j = 0; j < n_types; ++j) r(k, j) = spec.r_fn(tg(j), tg(k)) * masses(j);
  }
  const GroupMeasure group(space, r);
  const WeightKernel weights = WeightKernel::ones(space);

  auto [profile, report] = extragradient_solve(space, qmodel.game_model(), group, weights,
                                               RiskFactor::mean(), cfg);
  if (!report.converged) {
    throw std::runtime_error("discretized_continuum_crosscheck: solver did not converge");
  }

  double deviation = 0.0;
  for (int k = 0; k < n_types; ++k) {
    deviation = std::max(
        deviation, std::abs(profile.star(k) - interp_linear(spec.grid, continuum.actions, tg(k))));
  }
  return deviation;
}

}  // namespace kantmfg
