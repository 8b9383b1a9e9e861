#include "epigame/network.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace epigame {

std::vector<std::pair<int, int>> Network::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      if (weights(k, l) > 0.0) out.emplace_back(k, l);
  return out;
}

Network validate_network(const Eigen::MatrixXd& raw) {
  if (raw.rows() != raw.cols()) throw std::invalid_argument("network: matrix not square");
  const int n = static_cast<int>(raw.rows());
  if (n < 2) throw std::invalid_argument("network: need at least 2 agents");
  for (int i = 0; i < n; ++i) {
    if (raw(i, i) != 0.0)
      throw std::invalid_argument("network: nonzero diagonal at " + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(raw(i, j)))
        throw std::invalid_argument("network: non-finite entry");
      if (raw(i, j) < 0.0)
        throw std::invalid_argument("network: negative entry at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      if (std::abs(raw(i, j) - raw(j, i)) > kSymmetryTol)
        throw std::invalid_argument("network: asymmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    }
  }
  Network net;
  net.n = n;
  net.weights = 0.5 * (raw + raw.transpose());
  return net;
}

Network complete_network(int n, double a) {
  Eigen::MatrixXd w = a * (Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n));
  return validate_network(w);
}

Network cycle_network(int n, double a) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    w(i, j) = a;
    w(j, i) = a;
  }
  return validate_network(w);
}

Network star_network(int n, double a) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    w(0, i) = a;
    w(i, 0) = a;
  }
  return validate_network(w);
}

bool is_irreducible(const Network& net) {
  std::vector<char> seen(net.n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < net.n; ++v) {
      if (!seen[v] && net.weights(u, v) > 0.0) {
        seen[v] = 1;
        ++count;
        q.push(v);
      }
    }
  }
  return count == net.n;
}

bool is_aperiodic(const Network& net) {
  if (!is_irreducible(net))
    throw std::invalid_argument("is_aperiodic: undefined for reducible networks");
  // 2-coloring; an odd cycle shows up as a color clash
  std::vector<int> color(net.n, -1);
  std::queue<int> q;
  q.push(0);
  color[0] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < net.n; ++v) {
      if (net.weights(u, v) <= 0.0) continue;
      if (color[v] == -1) {
        color[v] = 1 - color[u];
        q.push(v);
      } else if (color[v] == color[u]) {
        return true;
      }
    }
  }
  return false;
}

Eigen::MatrixXd StrategyProfile::total() const {
  if (per_agent.empty()) return {};
  Eigen::MatrixXd t = per_agent[0];
  for (size_t i = 1; i < per_agent.size(); ++i) t += per_agent[i];
  return t;
}

StrategyProfile zero_profile(int n) {
  StrategyProfile p;
  p.per_agent.assign(n, Eigen::MatrixXd::Zero(n, n));
  return p;
}

void validate_profile(const Network& net, const StrategyProfile& profile, GameMode mode) {
  const int n = net.n;
  if (profile.n_agents() != n)
    throw std::invalid_argument("profile: agent count mismatch");
  for (int i = 0; i < n; ++i) {
    const auto& d = profile.per_agent[i];
    if (d.rows() != n || d.cols() != n)
      throw std::invalid_argument("profile: matrix shape mismatch for agent " + std::to_string(i));
    for (int k = 0; k < n; ++k) {
      if (d(k, k) != 0.0)
        throw std::invalid_argument("profile: nonzero diagonal for agent " + std::to_string(i));
      for (int l = 0; l < n; ++l) {
        if (d(k, l) < -kSymmetryTol)
          throw std::invalid_argument("profile: negative investment for agent " + std::to_string(i));
        if (std::abs(d(k, l) - d(l, k)) > kSymmetryTol)
          throw std::invalid_argument("profile: asymmetric investment for agent " + std::to_string(i));
        if (mode == GameMode::Local && k != i && l != i && d(k, l) > kSymmetryTol)
          throw std::invalid_argument("profile: non-incident investment in local mode, agent " +
                                      std::to_string(i));
      }
    }
  }
  const Eigen::MatrixXd total = profile.total();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (total(k, l) > net.weights(k, l) + kSymmetryTol)
        throw std::invalid_argument("profile: aggregate exceeds network weight at (" +
                                    std::to_string(k) + "," + std::to_string(l) + ")");
}

AggregateInvestment aggregate(const Network& net, const StrategyProfile& profile) {
  validate_profile(net, profile);
  return AggregateInvestment{profile.total()};
}

static Network residual_from_total(const Network& net, const Eigen::MatrixXd& total) {
  Eigen::MatrixXd r = net.weights - total;
  for (int k = 0; k < net.n; ++k)
    for (int l = 0; l < net.n; ++l) {
      if (r(k, l) < -kSymmetryTol)
        throw std::invalid_argument("residual_network: infeasible investment");
      if (r(k, l) < 0.0) r(k, l) = 0.0;
    }
  return validate_network(r);
}

Network residual_network(const Network& net, const StrategyProfile& profile) {
  validate_profile(net, profile);
  return residual_from_total(net, profile.total());
}

Network residual_network(const Network& net, const AggregateInvestment& agg) {
  return residual_from_total(net, agg.total);
}

LinkEligibility local_eligibility() {
  return [](int k, int l) { return std::vector<int>{k, l}; };
}

LinkEligibility global_eligibility(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return [all](int, int) { return all; };
}

StrategyProfile localize_profile(const Network& net, const AggregateInvestment& total,
                                 const LinkEligibility& eligible) {
  const int n = net.n;
  StrategyProfile out = zero_profile(n);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const double t = total.total(k, l);
      if (t == 0.0) continue;
      std::vector<int> agents = eligible(k, l);
      if (agents.empty())
        throw std::invalid_argument("localize_profile: no eligible agent on link (" +
                                    std::to_string(k) + "," + std::to_string(l) + ")");
      const double share = t / static_cast<double>(agents.size());
      for (int i : agents) {
        out.per_agent[i](k, l) += share;
        out.per_agent[i](l, k) += share;
      }
    }
  }
  return out;
}

}  // namespace epigame
