#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kantmfg/finite_solver.hpp"
#include "kantmfg/game_model.hpp"
#include "kantmfg/lq_continuum.hpp"
#include "kantmfg/types.hpp"

namespace kantmfg {

/// A finite-type game instance packaged with its cooperation setup.
struct FiniteScenario {
  std::string name;
  FiniteTypeSpace space;
  QuadraticFishingModel model;
  GroupMeasure group;
  WeightKernel weights;
  RiskFactor risk;
  std::map<std::string, double> parameters;
};

/// A continuum-of-types instance.
struct ContinuumScenario {
  std::string name;
  ContinuumLQSpec spec;
  std::map<std::string, double> parameters;
};

/// Single-type harvesting game (a = b = 1) with uniform group mass alpha.
FiniteScenario symmetric_fishing(double alpha);

/// Symmetric equilibrium action 1 / (3 + alpha) of the single-type game.
double kantian_reference(double alpha);
/// Symmetric equilibrium (2 - alpha) / (6 - 2 alpha) when each player softens
/// her own cost with an altruistic penalty of weight alpha instead of
/// imagining a group.
double altruistic_reference(double alpha);
/// Realized cost 2 u^2 - u when every player of the single-type game plays u.
double symmetric_cost(double u);

/// Four types crossing efficiency b in {1, 2} with effort weight a in {1, 2},
/// masses p = (0.1, 0.2, 0.3, 0.4), uniform group measure alpha * p.
FiniteScenario four_type_game(double alpha);

/// Named efficiency profiles for the continuum scenarios:
/// "flat" -> 1, "linear" -> t, "affine" -> 0.5 + 0.5 t.
std::function<double(double)> xi_profile(const std::string& id);

/// Continuum game with uniform membership density alpha.
ContinuumScenario continuum_uniform(double alpha, const std::string& xi = "flat",
                                    int n = 201);
/// Continuum game with the windowed membership kernel (reach 0.3, member cap 0.9).
ContinuumScenario continuum_windowed(double alpha, const std::string& xi = "flat",
                                     int n = 201);

/// Closed-form equilibrium action of the uniform continuum game at each grid
/// point: u(x) = xi(x) / ((C + 1)(2 + (1 - alpha) int xi^2 / (C + 1) dt)) with
/// C = alpha int xi^2 dt (quadrature-evaluated on the sample grid).
Eigen::VectorXd continuum_uniform_reference(const ContinuumLQSpec& spec, double alpha);

/// Names accepted by the command-line interface.
std::vector<std::string> scenario_names();

}  // namespace kantmfg
