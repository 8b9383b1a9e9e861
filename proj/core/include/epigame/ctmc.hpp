#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "epigame/dynamics.hpp"
#include "epigame/network.hpp"

namespace epigame {

struct SimulationResult {
  Eigen::VectorXd estimate;   // per-node infection probability at t_bar
  Eigen::VectorXd std_error;  // binomial standard errors
  std::uint64_t seed = 0;
  int samples = 0;
};

/// Event-driven simulation of the exact SI Markov chain. Each sample draws
/// the initial infections from x0 and then runs the unit-hazard clock scheme;
/// the RNG stream of sample s depends only on (seed, s), so the result does
/// not depend on evaluation order.
SimulationResult simulate_exact_ctmc(const Network& net, const EpidemicParams& p,
                                     int samples, std::uint64_t seed);

inline constexpr int kKolmogorovMaxNodes = 12;

/// Exact marginals at t_bar from the forward equations on the 2^n state
/// space. Limited to n <= 12.
Eigen::VectorXd solve_exact_kolmogorov(const Network& net, const EpidemicParams& p);

}  // namespace epigame
