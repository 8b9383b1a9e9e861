#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epigame/dynamics.hpp"
#include "epigame/network.hpp"

namespace epigame {

/// Prophylactic-investment game parameters.
struct GameParams {
  Eigen::VectorXd delta;  // nonnegative disutility weights
  EpidemicParams epi;
  double rho = 1.0;       // unit investment cost, > 0
  GameMode mode = GameMode::Global;
};

void validate_game(const GameParams& gp, int n);

/// exp(beta t_bar (A - D) diag(1 - x0)) for an aggregate investment D.
Eigen::MatrixXd residual_exponential(const Network& net, const Eigen::MatrixXd& agg,
                                     const GameParams& gp);

/// Connectivity kernel C = beta t_bar exp(beta t_bar (A - D) diag(1-x0)).
/// Entry (i,k) weighs the contagion paths from k to i left open by D.
Eigen::MatrixXd connectivity(const Network& net, const Eigen::MatrixXd& agg,
                             const GameParams& gp);
Eigen::MatrixXd connectivity(const Network& net, const StrategyProfile& profile,
                             const GameParams& gp);

/// v_i(A - D) = -delta_i <e_i, exp(beta t_bar (A-D) diag(1-x0)) diag(1-x0)^{-1} x0>.
double utility(const Network& net, const Eigen::MatrixXd& agg, const GameParams& gp, int i);
double utility(const Network& net, const StrategyProfile& profile, const GameParams& gp, int i);

/// rho times the sum of all entries of D^i.
double cost(const StrategyProfile& profile, const GameParams& gp, int i);

double payoff(const Network& net, const StrategyProfile& profile, const GameParams& gp, int i);

/// sum_i v_i(A - D) - rho 1'D1.
double social_welfare(const Network& net, const AggregateInvestment& agg, const GameParams& gp);
double social_welfare(const Network& net, const Eigen::MatrixXd& agg, const GameParams& gp);

/// Welfare of leaving interactions C open, i.e. aggregate D = A - C. The
/// interaction matrix may be non-symmetric (distancing policies are row
/// normalized), so this bypasses the Network invariants.
double social_welfare_at_interaction(const Network& net, const Eigen::MatrixXd& interaction,
                                     const GameParams& gp);

/// Marginal utility of agent i on link {k,l}:
///   delta_i (C_ik x0_l + C_il x0_k),
/// the first-order kernel surrogate used by all equilibrium conditions.
double marginal_utility(const Eigen::MatrixXd& kernel, const GameParams& gp,
                        int i, int k, int l);
double marginal_utility(const Network& net, const StrategyProfile& profile,
                        const GameParams& gp, int i, int k, int l);

/// Sum over agents of the link marginal, the social first-order quantity.
double social_marginal(const Eigen::MatrixXd& kernel, const GameParams& gp, int k, int l);

/// Both sides of the homogeneous derivative identity for a node subset M:
/// lhs sums the link marginals of agent i over ordered pairs (k,l) with
/// k or l in M (diagonal pairs included), rhs is
/// -2 |M| beta t_bar (1-alpha) U_i. They agree when M is empty or all nodes.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

IdentitySides homogeneous_derivative_identity(const Network& net, const StrategyProfile& profile,
                                              const GameParams& gp, int i,
                                              const std::vector<int>& subset);

/// Social-optimum twin of the identity, evaluated on the aggregate with the
/// sum of marginals on the lhs and sum of utilities on the rhs.
IdentitySides homogeneous_derivative_identity_social(const Network& net,
                                                     const AggregateInvestment& agg,
                                                     const GameParams& gp,
                                                     const std::vector<int>& subset);

}  // namespace epigame
