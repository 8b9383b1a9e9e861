#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "epigame/game.hpp"
#include "epigame/network.hpp"

namespace epigame {

using Link = std::pair<int, int>;  // k < l

enum class LinkCase { FullInvestment, NoInvestment, Interior };

enum class Classification {
  FullInvestment,
  NoInvestment,
  Interior,
  HomogeneousInterior,
  Mixed,
};

const char* to_string(LinkCase c);
const char* to_string(Classification c);

inline constexpr double kKktTol = 1e-6;
inline constexpr double kSolverTol = 1e-8;
inline constexpr int kMaxSolverIters = 100000;

struct VerifyResult {
  bool is_equilibrium = false;
  double kkt_residual = 0.0;
  std::map<Link, LinkCase> per_link_cases;
  std::map<Link, std::vector<int>> eligible_sets;
  Classification classification = Classification::NoInvestment;
};

struct EquilibriumReport {
  StrategyProfile profile;
  double kkt_residual = 0.0;
  Classification classification = Classification::NoInvestment;
  std::map<Link, LinkCase> per_link_cases;
  std::map<Link, std::vector<int>> eligible_sets;
  bool converged = false;
  bool oscillation = false;
  int sweeps = 0;
  std::vector<int> order;
};

struct OptimumReport {
  AggregateInvestment aggregate;
  double kkt_residual = 0.0;
  Classification classification = Classification::NoInvestment;
  std::map<Link, LinkCase> per_link_cases;
  bool converged = false;
  int iterations = 0;
};

/// Best response of agent i against the fixed investments of the others:
/// projected ascent of the link-wise first-order field (marginal utility
/// minus rho) over the per-link boxes, finished by monotone per-link
/// bisection until the projected field norm is below kSolverTol.
struct BestResponse {
  Eigen::MatrixXd investment;
  bool converged = false;
  int iterations = 0;
};

BestResponse best_response(const Network& net, const StrategyProfile& others,
                           const GameParams& gp, int i);

/// Cyclic best response in the given agent order, stopping when the
/// aggregate stops moving (1e-8) or a cycle of period <= 8 is detected.
/// The output is checked with verify_equilibrium.
EquilibriumReport find_equilibrium(const Network& net, const GameParams& gp,
                                   const StrategyProfile& init,
                                   const std::vector<int>& order);
EquilibriumReport find_equilibrium(const Network& net, const GameParams& gp);

/// Per-link first-order conditions of the mode's game at tolerance tau:
/// case classification against rho, plus the support condition that an agent
/// invests only where its own marginal reaches rho.
VerifyResult verify_equilibrium(const Network& net, const StrategyProfile& profile,
                                const GameParams& gp, double tau = kKktTol);

/// Moves each link's aggregate to the prescribed per-agent allocation.
/// Shares must be nonnegative, sum to the link total, and sit on eligible
/// agents only; the result is re-verified.
EquilibriumReport reallocate_investments(const Network& net, const EquilibriumReport& eq,
                                         const GameParams& gp,
                                         const std::map<Link, std::map<int, double>>& target);

/// Transports a full-investment or interior equilibrium to a more connected
/// network by investing the extra weight away, preserving the residual
/// network exactly. The constructed profile is re-verified on net_tilde.
EquilibriumReport induced_equilibrium(const Network& net_tilde, const Network& net,
                                      const EquilibriumReport& eq, const GameParams& gp);

/// Projected ascent on the summed first-order field over 0 <= D <= A.
OptimumReport social_optimum(const Network& net, const GameParams& gp,
                             const AggregateInvestment& init);
OptimumReport social_optimum(const Network& net, const GameParams& gp);

struct VerifyOptimumResult {
  bool is_optimum = false;
  double kkt_residual = 0.0;
  std::map<Link, LinkCase> per_link_cases;
  Classification classification = Classification::NoInvestment;
};

VerifyOptimumResult verify_social_optimum(const Network& net, const AggregateInvestment& agg,
                                          const GameParams& gp, double tau = kKktTol);

/// Multi-start equilibrium search: all agent orders for n <= 4, otherwise
/// n_random random orders drawn from the seed. Non-verifying runs are
/// dropped; at least one verified equilibrium is required.
struct MultiStartResult {
  EquilibriumReport worst;  // lowest social welfare found
  EquilibriumReport best;   // highest social welfare found
  double worst_welfare = 0.0;
  double best_welfare = 0.0;
  int runs = 0;
  int verified = 0;
};

MultiStartResult multi_start_equilibria(const Network& net, const GameParams& gp,
                                        int n_random, std::uint64_t seed);

}  // namespace epigame
