#include "kantmfg/game_model.hpp"

#include <stdexcept>

namespace kantmfg {

QuadraticFishingModel::QuadraticFishingModel(Eigen::VectorXd a, Eigen::VectorXd b,
                                             double lo, double hi)
    : effort_weight(std::move(a)), efficiency(std::move(b)), action_lo(lo), action_hi(hi) {
  if (effort_weight.size() == 0 || effort_weight.size() != efficiency.size()) {
    throw std::invalid_argument(
        "QuadraticFishingModel: effort/efficiency vectors must be nonempty and equal length");
  }
  if (!(action_lo < action_hi)) {
    throw std::invalid_argument("QuadraticFishingModel: action box must be nonempty");
  }
}

GameModel QuadraticFishingModel::game_model() const {
  GameModel m;
  const Eigen::VectorXd a = effort_weight;
  const Eigen::VectorXd b = efficiency;
  const int n = count();
  auto check = [n](int k) {
    if (k < 0 || k >= n) throw std::invalid_argument("QuadraticFishingModel: type index out of range");
  };
  m.cost = [a, b, check](double u, double ubar, int k) {
    check(k);
    return a(k) * u * u - (1.0 - ubar) * b(k) * u;
  };
  m.cost_du = [a, b, check](double u, double ubar, int k) {
    check(k);
    return 2.0 * a(k) * u - (1.0 - ubar) * b(k);
  };
  m.cost_dubar = [b, check](double u, double /*ubar*/, int k) {
    check(k);
    return b(k) * u;
  };
  m.aggregate = [b, check](double u, int k) {
    check(k);
    return b(k) * u;
  };
  m.aggregate_du = [b, check](double /*u*/, int k) {
    check(k);
    return b(k);
  };
  m.action_lo = action_lo;
  m.action_hi = action_hi;
  return m;
}

}  // namespace kantmfg
