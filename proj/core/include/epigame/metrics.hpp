#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/solvers.hpp"

namespace epigame {

/// Welfare levels and inefficiency ratios for one game instance. "Worst" and
/// "best" equilibria come from multi-start search, so the ratios are lower
/// bounds on the true worst-case quantities.
struct WelfareMetrics {
  double welfare_worst = 0.0;        // configured mode
  double welfare_optimum = 0.0;
  double poa = 0.0;
  bool degenerate = false;           // all delta zero; 0/0 ratio guarded
  bool worst_found_caveat = true;
  std::string provenance;
};

struct PoaBounds {
  double bound1 = 0.0;
  double bound2 = 0.0;
  std::vector<double> k_values;      // local bound only
  double sandwich_violation = 0.0;   // local bound only
};

struct PokResult {
  double pok = 0.0;
  double bound = 0.0;                // instance-level lower bound
  double bound_fallback = 0.0;       // network-only lower bound
  double identity_residual = 0.0;    // own-link interior identity at the local eq
  double welfare_worst_local = 0.0;
  double welfare_best_global = 0.0;
};

WelfareMetrics price_of_anarchy(const Network& net, const GameParams& gp,
                                int n_random_starts, std::uint64_t seed);

/// Upper bounds on the global-game price of anarchy. Hypotheses (homogeneous
/// x0, complete network, eq not full investment, optimum not no-investment)
/// are checked and violations throw.
PoaBounds poa_bound_global(const Network& net, const GameParams& gp,
                           const EquilibriumReport& eq, const OptimumReport& opt);

/// Local-game counterpart with the network-dependent K_i terms; requires
/// n >= 3 in addition to the global hypotheses.
PoaBounds poa_bound_local(const Network& net, const GameParams& gp,
                          const EquilibriumReport& eq, const OptimumReport& opt);

/// Price of autarky: worst local equilibrium welfare over best global
/// equilibrium welfare, with the instance-level lower bound. Requires the
/// worst local equilibrium to be homogeneous interior and the best global
/// one not full investment.
PokResult price_of_autarky(const Network& net, const GameParams& gp,
                           int n_random_starts, std::uint64_t seed);

/// Uniform social-distancing matrix C(A,kappa): row i rescaled to sum kappa.
struct DistancingPolicy {
  double kappa = 0.0;
  Eigen::MatrixXd interaction;  // generally non-symmetric
  bool admissible = false;      // A - C(A,kappa) >= 0 entrywise
};

DistancingPolicy distancing_matrix(const Network& net, double kappa);

/// Welfare of the policy: social welfare at aggregate D = A - C(A,kappa).
double evaluate_policy(const Network& net, double kappa, const GameParams& gp);

/// Level maximizing the policy objective (the first-order field of the game
/// along the kappa path is monotone, so the objective is concave in kappa;
/// the maximizer is bracketed on a coarse grid and refined by bisection).
struct OptimalKappa {
  double kappa = 0.0;
  double welfare = 0.0;       // evaluate_policy at kappa
  double epsilon_gap = 0.0;   // optimum welfare - policy welfare
};

OptimalKappa optimal_kappa(const Network& net, const GameParams& gp, int grid_points = 64);

}  // namespace epigame
