#include "kantmfg/lq_continuum.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kantmfg {

namespace {

constexpr double kTol = 1e-12;
constexpr double kSampleTol = 1e-9;

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& grid) {
  const Eigen::Index n = grid.size();
  Eigen::VectorXd q(n);
  q(0) = 0.5 * (grid(1) - grid(0));
  for (Eigen::Index j = 1; j + 1 < n; ++j) q(j) = 0.5 * (grid(j + 1) - grid(j - 1));
  q(n - 1) = 0.5 * (grid(n - 1) - grid(n - 2));
  return q;
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

void check_player(const ContinuumLQSpec& spec, int player, const char* what) {
  if (player < 0 || player >= spec.size()) {
    throw std::invalid_argument(std::string(what) + ": player index out of range");
  }
}

}  // namespace

void ContinuumLQSpec::validate() const {
  const int n = size();
  if (n < 2) throw std::invalid_argument("ContinuumLQSpec: need at least two grid points");
  if (xi.size() != n || p_density.size() != n || quad_weights.size() != n ||
      r_kernel.rows() != n || r_kernel.cols() != n || w_kernel.rows() != n ||
      w_kernel.cols() != n) {
    throw std::invalid_argument("ContinuumLQSpec: array sizes do not match the grid");
  }
  if (grid(0) < -kTol || grid(n - 1) > 1.0 + kTol) {
    throw std::invalid_argument("ContinuumLQSpec: grid must stay within [0, 1]");
  }
  for (int j = 1; j < n; ++j) {
    if (!(grid(j) > grid(j - 1))) {
      throw std::invalid_argument("ContinuumLQSpec: grid must be strictly increasing");
    }
  }
  if (!(xi.minCoeff() >= -kTol) || !(xi.maxCoeff() > 0.0)) {
    throw std::invalid_argument(
        "ContinuumLQSpec: efficiency must be nonnegative and not identically zero");
  }
  if (!(p_density.minCoeff() > 0.0)) {
    throw std::invalid_argument("ContinuumLQSpec: population density must be positive");
  }
  if (!(quad_weights.minCoeff() > 0.0)) {
    throw std::invalid_argument("ContinuumLQSpec: quadrature weights must be positive");
  }
  const double length = grid(n - 1) - grid(0);
  if (std::abs(quad_weights.sum() - length) > 1e-9) {
    throw std::invalid_argument(
        "ContinuumLQSpec: quadrature weights must sum to the domain length");
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double r = r_kernel(j, i);
      if (!std::isfinite(r) || r < -kTol || r > p_density(j) + kTol) {
        throw std::invalid_argument(
            "ContinuumLQSpec: membership density must satisfy 0 <= r(t, x) <= p(t)");
      }
      if (!std::isfinite(w_kernel(j, i)) || (r > kTol && !(w_kernel(j, i) > 0.0))) {
        throw std::invalid_argument(
            "ContinuumLQSpec: importance weights must be positive on the group support");
      }
    }
  }
  if (xi_fn) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(xi_fn(grid(j)) - xi(j)) > kSampleTol) {
        throw std::invalid_argument(
            "ContinuumLQSpec: analytic efficiency disagrees with its grid samples");
      }
    }
  }
  if (r_fn) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(r_fn(grid(j), grid(i)) - r_kernel(j, i)) > kSampleTol) {
          throw std::invalid_argument(
              "ContinuumLQSpec: analytic membership disagrees with its grid samples");
        }
      }
    }
  }
}

QuadratureConstants quadrature_constants(const ContinuumLQSpec& spec, int player) {
  check_player(spec, player, "quadrature_constants");
  QuadratureConstants c;
  for (int j = 0; j < spec.size(); ++j) {
    const double r = spec.r_kernel(j, player);
    if (r <= 0.0) continue;
    const double xi2 = spec.xi(j) * spec.xi(j);
    const double w = spec.w_kernel(j, player);
    c.c1 += spec.quad_weights(j) * xi2 * r;
    c.c2 += spec.quad_weights(j) * xi2 * r / w;
    c.c3 += spec.quad_weights(j) * xi2 * r * w;
  }
  return c;
}

MultiplierPair closed_form_multipliers(const ContinuumLQSpec& spec, int player,
                                       double ubar_minus) {
  const QuadratureConstants c = quadrature_constants(spec, player);
  const double d = (c.c1 + 2.0) * (c.c1 + 2.0) - c.c2 * c.c3;
  const double scale = (c.c1 + 2.0) * (c.c1 + 2.0) + std::abs(c.c2 * c.c3);
  if (std::abs(d) <= 1e-12 * std::max(1.0, scale)) {
    std::ostringstream msg;
    msg << "closed_form_multipliers: the stationarity system is singular (determinant " << d
        << "); the importance weights make the two aggregate constraints collinear";
    throw std::domain_error(msg.str());
  }
  MultiplierPair m;
  m.chi2 = (c.c1 * c.c1 + 2.0 * c.c1 - c.c2 * c.c3) / d * (1.0 - ubar_minus);
  m.p1 = 2.0 * c.c3 / d * (1.0 - ubar_minus);
  return m;
}

double lq_optimal_action(const ContinuumLQSpec& spec, int player, int t_index,
                         const MultiplierPair& multipliers, double ubar_minus) {
  check_player(spec, player, "lq_optimal_action");
  if (t_index < 0 || t_index >= spec.size()) {
    throw std::invalid_argument("lq_optimal_action: member index out of range");
  }
  const double w = spec.w_kernel(t_index, player);
  if (!(w > 0.0)) {
    throw std::domain_error(
        "lq_optimal_action: importance weight must be positive at the evaluated member");
  }
  return 0.5 * (1.0 - ubar_minus - multipliers.chi2 - multipliers.p1 / w) * spec.xi(t_index);
}

Eigen::VectorXd fredholm_solve(const ContinuumLQSpec& spec) {
  spec.validate();
  const int n = spec.size();
  if ((spec.w_kernel.array() - 1.0).abs().maxCoeff() > kTol) {
    throw std::invalid_argument("fredholm_solve: requires unit importance weights");
  }

  Eigen::VectorXd cvec(n);
  for (int j = 0; j < n; ++j) cvec(j) = quadrature_constants(spec, j).c1;

  // v(x) = int xi^2(t) (1 - v(t)) / (2 (C(t) + 1)) (p(t) - r(t, x)) dt
  // collocated on the grid: (I + K) v = K 1.
  Eigen::MatrixXd kernel(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      kernel(i, j) = spec.quad_weights(j) * spec.xi(j) * spec.xi(j) /
                     (2.0 * (cvec(j) + 1.0)) * (spec.p_density(j) - spec.r_kernel(j, i));
    }
  }
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + kernel;
  const Eigen::VectorXd rhs = kernel * Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd v = a.partialPivLu().solve(rhs);
  const double defect = (a * v - rhs).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff()))) {
    throw std::runtime_error("fredholm_solve: collocation system is numerically singular");
  }
  return v;
}

ContinuumSolution strategy_and_costs(const ContinuumLQSpec& spec,
                                     const Eigen::VectorXd& ubar_minus) {
  if (ubar_minus.size() != spec.size()) {
    throw std::invalid_argument("strategy_and_costs: statistic size does not match the grid");
  }
  const int n = spec.size();
  ContinuumSolution out;
  out.actions.resize(n);
  for (int i = 0; i < n; ++i) {
    const double c = quadrature_constants(spec, i).c1;
    out.actions(i) = (1.0 - ubar_minus(i)) * spec.xi(i) / (2.0 * (c + 1.0));
  }
  out.population_aggregate = 0.0;
  for (int j = 0; j < n; ++j) {
    out.population_aggregate +=
        spec.quad_weights(j) * spec.p_density(j) * spec.xi(j) * out.actions(j);
  }
  out.costs.resize(n);
  for (int i = 0; i < n; ++i) {
    out.costs(i) = out.actions(i) * out.actions(i) -
                   (1.0 - out.population_aggregate) * spec.xi(i) * out.actions(i);
  }
  return out;
}

ContinuumCandidate solve_continuum(const ContinuumLQSpec& spec) {
  ContinuumCandidate cand;
  cand.ubar_minus = fredholm_solve(spec);
  cand.actions = strategy_and_costs(spec, cand.ubar_minus).actions;
  const int n = spec.size();
  cand.chi2.resize(n);
  cand.p1.resize(n);
  for (int i = 0; i < n; ++i) {
    const MultiplierPair m = closed_form_multipliers(spec, i, cand.ubar_minus(i));
    cand.chi2(i) = m.chi2;
    cand.p1(i) = m.p1;
  }
  return cand;
}

double pontryagin_residual(const ContinuumLQSpec& spec, const ContinuumCandidate& candidate) {
  const int n = spec.size();
  if (candidate.actions.size() != n || candidate.chi2.size() != n ||
      candidate.p1.size() != n || candidate.ubar_minus.size() != n) {
    throw std::invalid_argument("pontryagin_residual: candidate size does not match the grid");
  }

  // Member-side arrays, re-sampled on the twice-refined grid when analytic
  // kernels are available so the candidate is tested as a continuum object.
  Eigen::VectorXd tg, qg, xig, pg, ug;
  Eigen::MatrixXd rg, wg;
  if (spec.has_analytic_kernels()) {
    const int m = 2 * n - 1;
    tg.resize(m);
    for (int j = 0; j + 1 < n; ++j) {
      tg(2 * j) = spec.grid(j);
      tg(2 * j + 1) = 0.5 * (spec.grid(j) + spec.grid(j + 1));
    }
    tg(m - 1) = spec.grid(n - 1);
    qg = trapezoid_weights(tg);
    xig.resize(m);
    pg.resize(m);
    ug.resize(m);
    for (int j = 0; j < m; ++j) {
      xig(j) = spec.xi_fn(tg(j));
      pg(j) = interp_linear(spec.grid, spec.p_density, tg(j));
      ug(j) = interp_linear(spec.grid, candidate.actions, tg(j));
    }
    rg.resize(m, n);
    wg.resize(m, n);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) {
        rg(j, i) = spec.r_fn(tg(j), spec.grid(i));
        wg(j, i) = spec.w_fn ? spec.w_fn(tg(j), spec.grid(i)) : 1.0;
      }
    }
  } else {
    tg = spec.grid;
    qg = spec.quad_weights;
    xig = spec.xi;
    pg = spec.p_density;
    ug = candidate.actions;
    rg = spec.r_kernel;
    wg = spec.w_kernel;
  }

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = candidate.ubar_minus(i);
    const double chi2 = candidate.chi2(i);
    const double p1 = candidate.p1(i);
    double s_costate = 0.0;    // int xi l w r dt, must equal p1
    double s_aggregate = 0.0;  // int xi l r dt, must equal chi2
    double s_outside = 0.0;    // int xi u (p - r) dt, must equal v
    for (int j = 0; j < tg.size(); ++j) {
      const double r = rg(j, i);
      s_outside += qg(j) * xig(j) * ug(j) * (pg(j) - r);
      if (r <= 0.0) continue;
      const double w = wg(j, i);
      const double l = 0.5 * (1.0 - v - chi2 - p1 / w) * xig(j);
      s_costate += qg(j) * xig(j) * l * w * r;
      s_aggregate += qg(j) * xig(j) * l * r;
    }
    worst = std::max({worst, std::abs(p1 - s_costate), std::abs(chi2 - s_aggregate),
                      std::abs(v - s_outside)});
  }
  return worst;
}

namespace {

ContinuumLQSpec build_spec(int n, std::function<double(double)> xi_fn,
                           std::function<double(double, double)> r_fn) {
  if (n < 2) throw std::invalid_argument("continuum spec: need at least two grid points");
  if (!xi_fn) throw std::invalid_argument("continuum spec: efficiency profile is required");
  ContinuumLQSpec spec;
  spec.grid = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
  spec.quad_weights = trapezoid_weights(spec.grid);
  spec.p_density = Eigen::VectorXd::Ones(n);
  spec.xi.resize(n);
  for (int j = 0; j < n; ++j) spec.xi(j) = xi_fn(spec.grid(j));
  spec.r_kernel.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) spec.r_kernel(j, i) = r_fn(spec.grid(j), spec.grid(i));
  }
  spec.w_kernel = Eigen::MatrixXd::Ones(n, n);
  spec.xi_fn = std::move(xi_fn);
  spec.r_fn = std::move(r_fn);
  spec.w_fn = [](double, double) { return 1.0; };
  spec.validate();
  return spec;
}

}  // namespace

ContinuumLQSpec uniform_continuum_spec(double alpha, int n,
                                       std::function<double(double)> xi_fn) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("uniform_continuum_spec: alpha must lie in [0, 1]");
  }
  return build_spec(n, std::move(xi_fn), [alpha](double, double) { return alpha; });
}

ContinuumLQSpec windowed_continuum_spec(double alpha, int n,
                                        std::function<double(double)> xi_fn) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("windowed_continuum_spec: alpha must lie in [0, 1]");
  }
  auto r_fn = [alpha](double t, double x) {
    constexpr double eps = 1e-9;
    const double lo = std::max(x - 0.3, 0.0);
    const double hi = std::min(x + 0.3, 0.9);
    if (t < lo - eps || t > hi + eps) return 0.0;
    // Jumps interior to [0, 1] are sampled at half value so trapezoid sums of
    // the step stay second-order; a window edge sitting on the domain
    // boundary is not a jump.
    if (std::abs(t - lo) <= eps) return lo <= eps ? alpha : 0.5 * alpha;
    if (std::abs(t - hi) <= eps) return 0.5 * alpha;
    return alpha;
  };
  return build_spec(n, std::move(xi_fn), r_fn);
}

}  // namespace kantmfg
