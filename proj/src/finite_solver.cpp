#include "kantmfg/finite_solver.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kantmfg/oracle.hpp"

namespace kantmfg {

namespace {

Eigen::VectorXd clamp_to_box(const Eigen::VectorXd& v, const GameModel& model) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = model.clamp(v(i));
  return out;
}

/// Warm start for player k's group strategy: the current star action of each
/// distinct type's first representative.
Eigen::VectorXd warm_start(int k, const Eigen::VectorXd& star, const FiniteTypeSpace& space,
                           const GameModel& model) {
  (void)k;
  Eigen::VectorXd v(space.distinct_count());
  for (int j = 0; j < space.distinct_count(); ++j) {
    v(j) = model.clamp(star(space.representative(j)));
  }
  return v;
}

void check_model_setup(const FiniteTypeSpace& space, const GroupMeasure& group,
                       const WeightKernel& weights, const char* what) {
  if (group.weights().rows() != space.count() || weights.weights().rows() != space.count()) {
    throw std::invalid_argument(std::string(what) +
                                ": group measure / weight kernel do not match the type space");
  }
}

void check_quadratic(const FiniteTypeSpace& space, const QuadraticFishingModel& model,
                     double alpha, const char* what) {
  if (model.count() != space.count()) {
    throw std::invalid_argument(std::string(what) + ": model size does not match the type space");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": alpha must lie in [0, 1]");
  }
  for (int k = 0; k < model.count(); ++k) {
    if (!(model.effort_weight(k) > 0.0)) {
      throw std::invalid_argument(std::string(what) + ": effort weights must be positive");
    }
  }
}

}  // namespace

BestResponse group_best_response(int k, const Eigen::VectorXd& star,
                                 const FiniteTypeSpace& space, const GameModel& model,
                                 const GroupMeasure& group, const WeightKernel& weights,
                                 RiskFactor beta, const SolverConfig& cfg) {
  if (!beta.is_finite()) {
    throw std::invalid_argument(
        "group_best_response: beta must be finite (grid search handles +-inf)");
  }
  check_model_setup(space, group, weights, "group_best_response");

  auto gradient = [&](const Eigen::VectorXd& v) {
    return grad_group_cost(k, v, star, space, model, group, weights, beta);
  };

  // Projected gradient with the step controlled by a secant estimate of the
  // local Lipschitz constant of the gradient (descent lemma: any step below
  // 1/L decreases the cost).  Function values are never compared, so the
  // iteration keeps converging even where cost differences fall below
  // floating-point noise.
  BestResponse out;
  Eigen::VectorXd v = warm_start(k, star, space, model);
  Eigen::VectorXd g = gradient(v);
  double step = 1.0;

  int it = 0;
  for (; it < cfg.inner_max; ++it) {
    out.residual = (v - clamp_to_box(v - g, model)).cwiseAbs().maxCoeff();
    if (out.residual <= cfg.inner_tol) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    for (int tries = 0; tries < 80; ++tries) {
      const Eigen::VectorXd cand = clamp_to_box(v - step * g, model);
      const Eigen::VectorXd move = cand - v;
      const double move_norm = move.norm();
      if (move_norm == 0.0) break;  // gradient pushes outward everywhere active
      const Eigen::VectorXd g_cand = gradient(cand);
      const double lipschitz = (g_cand - g).norm() / move_norm;
      if (step * lipschitz <= 0.9) {
        v = cand;
        g = g_cand;
        step = std::min(step * 1.5, 1e6);
        accepted = true;
        break;
      }
      step = 0.45 / lipschitz;
    }
    if (!accepted) break;  // stuck against the box: report the residual so far
  }
  out.iterations = it;
  out.actions = v;
  return out;
}

std::pair<EquilibriumProfile, SolveReport> fixed_point_solve(
    const FiniteTypeSpace& space, const GameModel& model, const GroupMeasure& group,
    const WeightKernel& weights, RiskFactor beta, const SolverConfig& cfg) {
  check_model_setup(space, group, weights, "fixed_point_solve");
  const int n = space.count();

  EquilibriumProfile profile;
  profile.star = Eigen::VectorXd::Constant(n, model.midpoint());
  profile.group_actions = Eigen::MatrixXd::Constant(n, space.distinct_count(), model.midpoint());
  SolveReport report;

  for (int it = 0; it < cfg.max_outer; ++it) {
    Eigen::VectorXd responses(n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd actions;
      if (beta.is_finite()) {
        actions = group_best_response(k, profile.star, space, model, group, weights, beta, cfg)
                      .actions;
      } else {
        actions = brute_force_group_min(k, profile.star, space, model, group, weights, beta,
                                        cfg.oracle_grid);
      }
      profile.group_actions.row(k) = actions.transpose();
      responses(k) = actions(space.sigma(k));
    }
    report.iterations = it + 1;
    report.final_residual = (profile.star - responses).cwiseAbs().maxCoeff();
    report.residual_history.push_back(report.final_residual);
    if (report.final_residual <= cfg.tol) {
      report.converged = true;
      break;
    }
    profile.star = (1.0 - cfg.damping) * profile.star + cfg.damping * responses;
  }
  return {std::move(profile), std::move(report)};
}

Eigen::VectorXd vi_map(const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star,
                       const FiniteTypeSpace& space, const GameModel& model,
                       const GroupMeasure& group, const WeightKernel& weights,
                       RiskFactor beta) {
  const int n = space.count();
  const int nd = space.distinct_count();
  if (group_actions.rows() != n || group_actions.cols() != nd || star.size() != n) {
    throw std::invalid_argument("vi_map: profile dimensions do not match the type space");
  }
  Eigen::VectorXd f(n * nd + n);
  for (int k = 0; k < n; ++k) {
    f.segment(static_cast<Eigen::Index>(k) * nd, nd) = grad_group_cost(
        k, group_actions.row(k).transpose(), star, space, model, group, weights, beta);
  }
  for (int k = 0; k < n; ++k) {
    f(static_cast<Eigen::Index>(n) * nd + k) = star(k) - group_actions(k, space.sigma(k));
  }
  return f;
}

namespace {

Eigen::VectorXd stack(const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star) {
  const Eigen::Index n = star.size();
  const Eigen::Index nd = group_actions.cols();
  Eigen::VectorXd z(n * nd + n);
  for (Eigen::Index k = 0; k < n; ++k) {
    z.segment(k * nd, nd) = group_actions.row(k).transpose();
  }
  z.tail(n) = star;
  return z;
}

void unstack(const Eigen::VectorXd& z, Eigen::MatrixXd& group_actions, Eigen::VectorXd& star) {
  const Eigen::Index n = star.size();
  const Eigen::Index nd = group_actions.cols();
  for (Eigen::Index k = 0; k < n; ++k) {
    group_actions.row(k) = z.segment(k * nd, nd).transpose();
  }
  star = z.tail(n);
}

}  // namespace

double vi_residual(const Eigen::MatrixXd& group_actions, const Eigen::VectorXd& star,
                   double step, const FiniteTypeSpace& space, const GameModel& model,
                   const GroupMeasure& group, const WeightKernel& weights, RiskFactor beta) {
  if (!(step > 0.0)) throw std::invalid_argument("vi_residual: step must be positive");
  const Eigen::VectorXd z = stack(group_actions, star);
  const Eigen::VectorXd f = vi_map(group_actions, star, space, model, group, weights, beta);
  return (z - clamp_to_box(z - step * f, model)).cwiseAbs().maxCoeff();
}

std::pair<EquilibriumProfile, SolveReport> extragradient_solve(
    const FiniteTypeSpace& space, const GameModel& model, const GroupMeasure& group,
    const WeightKernel& weights, RiskFactor beta, const SolverConfig& cfg) {
  check_model_setup(space, group, weights, "extragradient_solve");
  const int n = space.count();
  const int nd = space.distinct_count();

  EquilibriumProfile profile;
  profile.star = Eigen::VectorXd::Constant(n, model.midpoint());
  profile.group_actions = Eigen::MatrixXd::Constant(n, nd, model.midpoint());
  SolveReport report;

  auto map_at = [&](const Eigen::VectorXd& z) {
    Eigen::MatrixXd ga(n, nd);
    Eigen::VectorXd st(n);
    unstack(z, ga, st);
    return vi_map(ga, st, space, model, group, weights, beta);
  };

  Eigen::VectorXd z = stack(profile.group_actions, profile.star);
  double eta = cfg.extragradient_step;
  constexpr double kEtaMin = 1e-10;

  for (int it = 0; it < cfg.max_outer; ++it) {
    unstack(z, profile.group_actions, profile.star);
    report.iterations = it + 1;
    report.final_residual = vi_residual(profile.group_actions, profile.star,
                                        cfg.extragradient_step, space, model, group,
                                        weights, beta);
    report.residual_history.push_back(report.final_residual);
    if (report.final_residual <= cfg.tol) {
      report.converged = true;
      break;
    }
    const std::size_t h = report.residual_history.size();
    if (h > 100 &&
        report.final_residual > 10.0 * report.residual_history[h - 101]) {
      break;  // diverging: abort rather than loop to the iteration cap
    }

    const Eigen::VectorXd fz = map_at(z);
    Eigen::VectorXd zb, fzb;
    while (true) {
      zb = clamp_to_box(z - eta * fz, model);
      fzb = map_at(zb);
      const double move = (z - zb).norm();
      // Predictor acceptance: the step must respect the local Lipschitz
      // estimate of the map, else halve and retry.
      if (move == 0.0 || eta * (fz - fzb).norm() <= 0.9 * move || eta <= kEtaMin) break;
      eta *= 0.5;
    }
    z = clamp_to_box(z - eta * fzb, model);
  }
  unstack(z, profile.group_actions, profile.star);
  return {std::move(profile), std::move(report)};
}

MonotonicityProbe monotonicity_probe(const FiniteTypeSpace& space, const GameModel& model,
                                     const GroupMeasure& group, const WeightKernel& weights,
                                     RiskFactor beta, int samples, unsigned seed) {
  check_model_setup(space, group, weights, "monotonicity_probe");
  if (samples <= 0) throw std::invalid_argument("monotonicity_probe: need a positive sample count");
  const int n = space.count();
  const int nd = space.distinct_count();
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * nd + n;

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(model.action_lo, model.action_hi);
  auto draw = [&]() {
    Eigen::VectorXd z(dim);
    for (Eigen::Index i = 0; i < dim; ++i) z(i) = box(rng);
    return z;
  };
  auto map_at = [&](const Eigen::VectorXd& z) {
    Eigen::MatrixXd ga(n, nd);
    Eigen::VectorXd st(n);
    unstack(z, ga, st);
    return vi_map(ga, st, space, model, group, weights, beta);
  };

  MonotonicityProbe probe;
  probe.min_value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd za = draw();
    const Eigen::VectorXd zb = draw();
    const Eigen::VectorXd d = zb - za;
    const double n2 = d.squaredNorm();
    if (n2 < 1e-20) continue;
    probe.min_value = std::min(probe.min_value, (map_at(zb) - map_at(za)).dot(d) / n2);
  }
  probe.certificate = probe.min_value > 0.0;
  return probe;
}

DirectSolve quadratic_rkn_direct(const FiniteTypeSpace& space,
                                 const QuadraticFishingModel& model, double alpha) {
  check_quadratic(space, model, alpha, "quadratic_rkn_direct");
  const int n = space.count();
  const Eigen::VectorXd& p = space.distribution();
  const Eigen::VectorXd l = p.cwiseProduct(model.efficiency);
  Eigen::MatrixXd a = (1.0 + alpha) * l * l.transpose();
  for (int k = 0; k < n; ++k) a(k, k) += 2.0 * p(k) * model.effort_weight(k);

  DirectSolve out;
  out.actions = a.partialPivLu().solve(l);
  out.residual = (a * out.actions - l).cwiseAbs().maxCoeff();
  return out;
}

HrknSolution quadratic_hrkn_direct(const FiniteTypeSpace& space,
                                   const QuadraticFishingModel& model, double alpha) {
  check_quadratic(space, model, alpha, "quadratic_hrkn_direct");
  const int n = space.count();
  if (space.distinct_count() != n) {
    throw std::invalid_argument(
        "quadratic_hrkn_direct: type pairs must have distinct individual types");
  }

  // Two perception classes keyed by effort weight: a player imagines every
  // group member paying her own effort weight while keeping true efficiencies.
  std::vector<double> class_weight;
  std::vector<int> class_of(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a_k = model.effort_weight(k);
    int c = -1;
    for (std::size_t j = 0; j < class_weight.size(); ++j) {
      if (class_weight[j] == a_k) c = static_cast<int>(j);
    }
    if (c < 0) {
      c = static_cast<int>(class_weight.size());
      class_weight.push_back(a_k);
    }
    class_of[static_cast<std::size_t>(k)] = c;
  }
  if (class_weight.size() != 2) {
    throw std::invalid_argument(
        "quadratic_hrkn_direct: expected exactly two distinct effort weights");
  }

  const Eigen::VectorXd& p = space.distribution();
  const Eigen::VectorXd l = p.cwiseProduct(model.efficiency);
  const Eigen::MatrixXd llt = l * l.transpose();

  // Unknowns: the two class profiles u1, u2 and the consistent equilibrium u.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3 * n);
  for (int c = 0; c < 2; ++c) {
    Eigen::MatrixXd block = 2.0 * alpha * llt;
    for (int k = 0; k < n; ++k) block(k, k) += 2.0 * class_weight[static_cast<std::size_t>(c)] * p(k);
    m.block(c * n, c * n, n, n) = block;
    m.block(c * n, 2 * n, n, n) = (1.0 - alpha) * llt;
    rhs.segment(c * n, n) = l;
  }
  for (int k = 0; k < n; ++k) {
    m(2 * n + k, class_of[static_cast<std::size_t>(k)] * n + k) = 1.0;
    m(2 * n + k, 2 * n + k) = -1.0;
  }

  const Eigen::VectorXd z = m.partialPivLu().solve(rhs);
  HrknSolution out;
  out.class1_profile = z.segment(0, n);
  out.class2_profile = z.segment(n, n);
  out.equilibrium = z.segment(2 * n, n);
  out.residual = (m * z - rhs).cwiseAbs().maxCoeff();
  return out;
}

SpecialCaseSetup build_special_case(SpecialCase kind, const FiniteTypeSpace& space) {
  switch (kind) {
    case SpecialCase::Nash:
      return {GroupMeasure::zero(space), WeightKernel::ones(space), RiskFactor::mean()};
    case SpecialCase::Harsanyi:
      return {GroupMeasure::full(space), WeightKernel::ones(space), RiskFactor::mean()};
    case SpecialCase::Rawls:
      return {GroupMeasure::full(space), WeightKernel::ones(space), RiskFactor::worst_case()};
    case SpecialCase::BestOff:
      return {GroupMeasure::full(space), WeightKernel::ones(space), RiskFactor::best_case()};
  }
  throw std::invalid_argument("build_special_case: unknown kind");
}

SpecialCaseSetup build_coalition_case(const FiniteTypeSpace& space,
                                      const std::vector<std::vector<int>>& blocks) {
  return {GroupMeasure::coalition(space, blocks), WeightKernel::ones(space),
          RiskFactor::mean()};
}

SpecialCaseSetup build_uniform_case(const FiniteTypeSpace& space, double alpha) {
  return {GroupMeasure::uniform(space, alpha), WeightKernel::ones(space), RiskFactor::mean()};
}

}  // namespace kantmfg
