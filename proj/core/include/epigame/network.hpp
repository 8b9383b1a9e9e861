#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

namespace epigame {

/// Undirected weighted contact network. Weights are symmetric, nonnegative,
/// with a zero diagonal; an edge exists where the weight is strictly positive.
struct Network {
  int n = 0;
  Eigen::MatrixXd weights;

  /// Unordered edges {k,l}, k < l, with weights[k][l] > 0.
  std::vector<std::pair<int, int>> edges() const;
};

inline constexpr double kSymmetryTol = 1e-12;

/// Validates a raw matrix as a Network. Rejects non-square input, n < 2,
/// asymmetry beyond kSymmetryTol, negative entries and nonzero diagonals.
/// Accepted matrices are symmetrized by averaging.
Network validate_network(const Eigen::MatrixXd& raw);

Network complete_network(int n, double a);
Network cycle_network(int n, double a);
Network star_network(int n, double a);

/// True iff the positive-weight graph is connected.
bool is_irreducible(const Network& net);

/// True iff the positive-weight graph is non-bipartite. Only defined for
/// irreducible networks; throws otherwise.
bool is_aperiodic(const Network& net);

enum class GameMode { Local, Global };

/// Per-agent investment matrices D^i. Each matrix is symmetric, nonnegative,
/// zero-diagonal; their sum must stay entrywise below the network weights.
/// In local mode agent i may only hold investment on links incident to i.
struct StrategyProfile {
  std::vector<Eigen::MatrixXd> per_agent;

  int n_agents() const { return static_cast<int>(per_agent.size()); }
  Eigen::MatrixXd total() const;
};

StrategyProfile zero_profile(int n);

/// Throws if the profile violates shape, symmetry, nonnegativity,
/// aggregate feasibility against net, or locality (when mode is Local).
void validate_profile(const Network& net, const StrategyProfile& profile,
                      GameMode mode = GameMode::Global);

/// Aggregate investment D = sum_i D^i with 0 <= D <= A entrywise.
struct AggregateInvestment {
  Eigen::MatrixXd total;
};

AggregateInvestment aggregate(const Network& net, const StrategyProfile& profile);

/// A - sum_i D^i as a Network. Throws on infeasible profiles; entries within
/// kSymmetryTol below zero are clamped to exact zero.
Network residual_network(const Network& net, const StrategyProfile& profile);
Network residual_network(const Network& net, const AggregateInvestment& agg);

/// Agents allowed to carry investment on link {k,l}.
using LinkEligibility = std::function<std::vector<int>(int k, int l)>;

LinkEligibility local_eligibility();
LinkEligibility global_eligibility(int n);

/// Splits each link's aggregate investment equally among its eligible agents.
/// The aggregate is preserved exactly; a link with positive investment and no
/// eligible agent is an error.
StrategyProfile localize_profile(const Network& net, const AggregateInvestment& total,
                                 const LinkEligibility& eligible);

}  // namespace epigame
