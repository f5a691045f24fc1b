#pragma once

#include <Eigen/Dense>

#include <functional>

namespace kantmfg {

/// Linear-quadratic game over a continuum of types x in [0, 1]: a player of
/// type x chooses an effort path u(t), pays int u^2 - (1 - ubar) xi u dt with
/// the efficiency profile xi, and imagines commanding the virtual group with
/// membership density r(t, x) (first argument = member, second = player).
/// Everything is sampled on a common quadrature grid; the optional analytic
/// callbacks allow consistency checks to re-sample on refined grids.
struct ContinuumLQSpec {
  Eigen::VectorXd grid;          // n increasing points spanning [0, 1]
  Eigen::VectorXd xi;            // efficiency xi(t_j) >= 0, not identically 0
  Eigen::VectorXd p_density;     // population density, 1 everywhere by default
  Eigen::VectorXd quad_weights;  // positive, summing to the domain length
  Eigen::MatrixXd r_kernel;      // r(t_j, x_i): row j = member, column i = player
  Eigen::MatrixXd w_kernel;      // importance weights w(t_j, x_i) > 0 where r > 0

  // Analytic forms (optional); when present they must agree with the sampled
  // arrays on the grid.  Jump discontinuities of r must be sampled with the
  // half-way value so trapezoid sums stay second-order accurate.
  std::function<double(double)> xi_fn;
  std::function<double(double, double)> r_fn;  // r(t, x)
  std::function<double(double, double)> w_fn;

  int size() const { return static_cast<int>(grid.size()); }
  bool has_analytic_kernels() const { return static_cast<bool>(r_fn) && static_cast<bool>(xi_fn); }
  void validate() const;
};

struct QuadratureConstants {
  double c1 = 0.0;  // int xi^2 r dt
  double c2 = 0.0;  // int xi^2 r / w dt
  double c3 = 0.0;  // int xi^2 r w dt
};

/// Quadrature sums of the three kernel moments entering the multiplier
/// formulas, for the group of the given player grid index.
QuadratureConstants quadrature_constants(const ContinuumLQSpec& spec, int player);

struct MultiplierPair {
  double chi2 = 0.0;  // multiplier of the group's aggregate constraint
  double p1 = 0.0;    // constant costate of the mean-field state
};

/// Closed form for the stationarity pair
///   (2 + C1) chi2 + C2 p1 = (1 - ubar_minus) C1
///   C3 chi2 + (2 + C1) p1 = (1 - ubar_minus) C3,
/// i.e. chi2 = (C1^2 + 2 C1 - C2 C3) / D * (1 - ubar_minus) and
/// p1 = 2 C3 / D * (1 - ubar_minus) with D = (C1 + 2)^2 - C2 C3.
/// With w == 1 both collapse to C / (2C + 2) * (1 - ubar_minus).
MultiplierPair closed_form_multipliers(const ContinuumLQSpec& spec, int player,
                                       double ubar_minus);

/// Pointwise minimizer of the group Hamiltonian for the quadratic stage cost:
///   u = (1 - ubar_minus - chi2 - p1 / w(t, x)) xi(t) / 2
/// evaluated at member grid index t_index for the given player.
double lq_optimal_action(const ContinuumLQSpec& spec, int player, int t_index,
                         const MultiplierPair& multipliers, double ubar_minus);

/// Solves the linear integral equation fixing the out-of-group statistic
/// ubar_minus(x) each player faces (requires w == 1):
///   ubar_minus(x) = int xi^2(t) (1 - ubar_minus(t)) / (2 (C(t) + 1)) (1 - r(t, x)) dt.
/// Collocation on the sample grid turns it into (I + K) v = K 1, solved by LU.
Eigen::VectorXd fredholm_solve(const ContinuumLQSpec& spec);

struct ContinuumSolution {
  Eigen::VectorXd actions;          // equilibrium action of each type
  Eigen::VectorXd costs;            // realized cost of each type
  double population_aggregate = 0;  // int xi u dt at equilibrium
};

/// Equilibrium strategy and realized per-type costs implied by the
/// out-of-group statistic v = ubar_minus on the grid (w == 1):
///   u(x) = (1 - v(x)) xi(x) / (2 (C(x) + 1)).
ContinuumSolution strategy_and_costs(const ContinuumLQSpec& spec,
                                     const Eigen::VectorXd& ubar_minus);

struct ContinuumCandidate {
  Eigen::VectorXd actions;     // u(x) on the grid
  Eigen::VectorXd chi2;        // per-player multipliers
  Eigen::VectorXd p1;
  Eigen::VectorXd ubar_minus;  // per-player out-of-group statistic
};

/// Sup-norm defect of a candidate against the three optimality conditions
/// (costate balance, group-aggregate consistency, out-of-group consistency).
/// With analytic kernels the integrals are re-evaluated on the twice-refined
/// grid with the candidate linearly interpolated, so the value measures the
/// continuum defect (O(n^-2) for the built-in scenarios) rather than the
/// discrete identity the solver satisfies by construction.
double pontryagin_residual(const ContinuumLQSpec& spec, const ContinuumCandidate& candidate);

/// Convenience: solve + multipliers packaged as a checkable candidate.
ContinuumCandidate solve_continuum(const ContinuumLQSpec& spec);

/// Uniform membership r == alpha with the given efficiency profile.
ContinuumLQSpec uniform_continuum_spec(double alpha, int n,
                                       std::function<double(double)> xi_fn);

/// Windowed membership: member t belongs to player x's group iff
/// |t - x| <= 0.3 and t <= 0.9 (members beyond 0.9 join no group), with
/// density alpha inside the window.  Window edges are sampled at half value;
/// grids with 0.3 and 0.9 as nodes (e.g. 201, 401 points) keep the quadrature
/// second-order.
ContinuumLQSpec windowed_continuum_spec(double alpha, int n,
                                        std::function<double(double)> xi_fn);

}  // namespace kantmfg
