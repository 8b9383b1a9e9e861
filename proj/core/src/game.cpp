#include "epigame/game.hpp"

#include <cmath>
#include <stdexcept>

#include "epigame/expm.hpp"

namespace epigame {

void validate_game(const GameParams& gp, int n) {
  if (gp.delta.size() != n) throw std::invalid_argument("game: delta size mismatch");
  for (int i = 0; i < n; ++i)
    if (!(gp.delta[i] >= 0.0)) throw std::invalid_argument("game: delta must be nonnegative");
  if (!(gp.rho > 0.0)) throw std::invalid_argument("game: rho must be positive");
  validate_params(gp.epi, n);
}

Eigen::MatrixXd residual_exponential(const Network& net, const Eigen::MatrixXd& agg,
                                     const GameParams& gp) {
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - gp.epi.x0;
  const Eigen::MatrixXd m =
      gp.epi.beta * gp.epi.t_bar * (net.weights - agg) * one_minus.asDiagonal();
  return matrix_exponential(m);
}

Eigen::MatrixXd connectivity(const Network& net, const Eigen::MatrixXd& agg,
                             const GameParams& gp) {
  return gp.epi.beta * gp.epi.t_bar * residual_exponential(net, agg, gp);
}

Eigen::MatrixXd connectivity(const Network& net, const StrategyProfile& profile,
                             const GameParams& gp) {
  return connectivity(net, profile.total(), gp);
}

double utility(const Network& net, const Eigen::MatrixXd& agg, const GameParams& gp, int i) {
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - gp.epi.x0;
  const Eigen::VectorXd w = gp.epi.x0.cwiseQuotient(one_minus);
  const Eigen::MatrixXd e = residual_exponential(net, agg, gp);
  return -gp.delta[i] * e.row(i).dot(w);
}

double utility(const Network& net, const StrategyProfile& profile, const GameParams& gp, int i) {
  return utility(net, profile.total(), gp, i);
}

double cost(const StrategyProfile& profile, const GameParams& gp, int i) {
  return gp.rho * profile.per_agent.at(i).sum();
}

double payoff(const Network& net, const StrategyProfile& profile, const GameParams& gp, int i) {
  return utility(net, profile, gp, i) - cost(profile, gp, i);
}

double social_welfare(const Network& net, const Eigen::MatrixXd& agg, const GameParams& gp) {
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - gp.epi.x0;
  const Eigen::VectorXd w = gp.epi.x0.cwiseQuotient(one_minus);
  const Eigen::MatrixXd e = residual_exponential(net, agg, gp);
  double total = 0.0;
  for (int i = 0; i < net.n; ++i) total -= gp.delta[i] * e.row(i).dot(w);
  return total - gp.rho * agg.sum();
}

double social_welfare(const Network& net, const AggregateInvestment& agg, const GameParams& gp) {
  return social_welfare(net, agg.total, gp);
}

double social_welfare_at_interaction(const Network& net, const Eigen::MatrixXd& interaction,
                                     const GameParams& gp) {
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - gp.epi.x0;
  const Eigen::VectorXd w = gp.epi.x0.cwiseQuotient(one_minus);
  const Eigen::MatrixXd e =
      matrix_exponential(gp.epi.beta * gp.epi.t_bar * interaction * one_minus.asDiagonal());
  double total = 0.0;
  for (int i = 0; i < net.n; ++i) total -= gp.delta[i] * e.row(i).dot(w);
  return total - gp.rho * (net.weights - interaction).sum();
}

double marginal_utility(const Eigen::MatrixXd& kernel, const GameParams& gp, int i, int k,
                        int l) {
  if (k == l) throw std::invalid_argument("marginal_utility: k == l");
  return gp.delta[i] * (kernel(i, k) * gp.epi.x0[l] + kernel(i, l) * gp.epi.x0[k]);
}

double marginal_utility(const Network& net, const StrategyProfile& profile, const GameParams& gp,
                        int i, int k, int l) {
  return marginal_utility(connectivity(net, profile, gp), gp, i, k, l);
}

double social_marginal(const Eigen::MatrixXd& kernel, const GameParams& gp, int k, int l) {
  double g = 0.0;
  for (int i = 0; i < kernel.rows(); ++i) g += marginal_utility(kernel, gp, i, k, l);
  return g;
}

namespace {

// lhs of the identity: sum of agent i's link marginals over ordered pairs
// (k,l) with k or l in the subset, diagonal pairs included.
double subset_marginal_sum(const Eigen::MatrixXd& kernel, const GameParams& gp, int i,
                           const std::vector<int>& subset, int n) {
  std::vector<char> in_set(n, 0);
  for (int m : subset) in_set.at(m) = 1;
  double lhs = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (!in_set[k] && !in_set[l]) continue;
      lhs += gp.delta[i] * (kernel(i, k) * gp.epi.x0[l] + kernel(i, l) * gp.epi.x0[k]);
    }
  return lhs;
}

}  // namespace

IdentitySides homogeneous_derivative_identity(const Network& net, const StrategyProfile& profile,
                                              const GameParams& gp, int i,
                                              const std::vector<int>& subset) {
  double alpha = 0.0;
  if (!homogeneous_x0(gp.epi, &alpha))
    throw std::invalid_argument("derivative identity: x0 must be homogeneous");
  const Eigen::MatrixXd kernel = connectivity(net, profile, gp);
  IdentitySides out;
  out.lhs = subset_marginal_sum(kernel, gp, i, subset, net.n);
  out.rhs = -2.0 * static_cast<double>(subset.size()) * gp.epi.beta * gp.epi.t_bar *
            (1.0 - alpha) * utility(net, profile, gp, i);
  return out;
}

IdentitySides homogeneous_derivative_identity_social(const Network& net,
                                                     const AggregateInvestment& agg,
                                                     const GameParams& gp,
                                                     const std::vector<int>& subset) {
  double alpha = 0.0;
  if (!homogeneous_x0(gp.epi, &alpha))
    throw std::invalid_argument("derivative identity: x0 must be homogeneous");
  const Eigen::MatrixXd kernel = connectivity(net, agg.total, gp);
  IdentitySides out;
  for (int i = 0; i < net.n; ++i) {
    out.lhs += subset_marginal_sum(kernel, gp, i, subset, net.n);
    out.rhs += -2.0 * static_cast<double>(subset.size()) * gp.epi.beta * gp.epi.t_bar *
               (1.0 - alpha) * utility(net, agg.total, gp, i);
  }
  return out;
}

}  // namespace epigame
