#include "kantmfg/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace kantmfg {

FiniteScenario symmetric_fishing(double alpha) {
  FiniteTypeSpace space({{1.0, 1.0}}, {0}, Eigen::VectorXd::Ones(1));
  QuadraticFishingModel model(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1));
  GroupMeasure group = GroupMeasure::uniform(space, alpha);
  WeightKernel weights = WeightKernel::ones(space);
  return {"symmetric_fishing", std::move(space),   std::move(model),
          std::move(group),    std::move(weights), RiskFactor::mean(),
          {{"alpha", alpha}}};
}

double kantian_reference(double alpha) { return 1.0 / (3.0 + alpha); }

double altruistic_reference(double alpha) { return (2.0 - alpha) / (6.0 - 2.0 * alpha); }

double symmetric_cost(double u) { return 2.0 * u * u - u; }

FiniteScenario four_type_game(double alpha) {
  // Types cross efficiency (first descriptor entry) with effort weight
  // (second entry); every pair occurs, with the heavier, more efficient types
  // carrying more mass.
  FiniteTypeSpace space({{1.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}, {2.0, 2.0}},
                        {0, 0, 0, 0}, Eigen::Vector4d(0.1, 0.2, 0.3, 0.4));
  Eigen::VectorXd a(4), b(4);
  a << 1.0, 2.0, 1.0, 2.0;
  b << 1.0, 1.0, 2.0, 2.0;
  QuadraticFishingModel model(a, b);
  GroupMeasure group = GroupMeasure::uniform(space, alpha);
  WeightKernel weights = WeightKernel::ones(space);
  return {"four_type",        std::move(space),   std::move(model),
          std::move(group),   std::move(weights), RiskFactor::mean(),
          {{"alpha", alpha}}};
}

std::function<double(double)> xi_profile(const std::string& id) {
  if (id == "flat") return [](double) { return 1.0; };
  if (id == "linear") return [](double t) { return t; };
  if (id == "affine") return [](double t) { return 0.5 + 0.5 * t; };
  throw std::invalid_argument("xi_profile: unknown profile '" + id +
                              "' (expected flat, linear, or affine)");
}

ContinuumScenario continuum_uniform(double alpha, const std::string& xi, int n) {
  return {"continuum_uniform", uniform_continuum_spec(alpha, n, xi_profile(xi)),
          {{"alpha", alpha}, {"grid_n", static_cast<double>(n)}}};
}

ContinuumScenario continuum_windowed(double alpha, const std::string& xi, int n) {
  return {"continuum_windowed", windowed_continuum_spec(alpha, n, xi_profile(xi)),
          {{"alpha", alpha}, {"grid_n", static_cast<double>(n)}}};
}

Eigen::VectorXd continuum_uniform_reference(const ContinuumLQSpec& spec, double alpha) {
  spec.validate();
  if ((spec.r_kernel.array() - alpha).abs().maxCoeff() > 1e-9 ||
      (spec.p_density.array() - 1.0).abs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(
        "continuum_uniform_reference: spec is not the uniform-membership game");
  }
  double xi2_int = 0.0;
  for (int j = 0; j < spec.size(); ++j) {
    xi2_int += spec.quad_weights(j) * spec.xi(j) * spec.xi(j);
  }
  const double c = alpha * xi2_int;
  const double denom = (c + 1.0) * (2.0 + (1.0 - alpha) * xi2_int / (c + 1.0));
  return spec.xi / denom;
}

std::vector<std::string> scenario_names() {
  return {"symmetric_fishing", "four_type", "continuum_uniform", "continuum_windowed"};
}

}  // namespace kantmfg
