#include "epigame/ctmc.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "epigame/ode.hpp"

namespace epigame {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d649bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SimulationResult simulate_exact_ctmc(const Network& net, const EpidemicParams& p, int samples,
                                     std::uint64_t seed) {
  validate_params(p, net.n);
  if (samples < 1) throw std::invalid_argument("ctmc: samples must be >= 1");
  const int n = net.n;

  Eigen::VectorXd hits = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < samples; ++s) {
    // stream depends only on (seed, s)
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(s))));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::exponential_distribution<double> exp1(1.0);

    std::vector<char> infected(n, 0);
    for (int i = 0; i < n; ++i) infected[i] = unif(rng) < p.x0[i] ? 1 : 0;

    // unit-hazard clocks: node i fires when its integrated hazard reaches tau_i
    std::vector<double> tau(n), hazard(n, 0.0), rate(n, 0.0);
    for (int i = 0; i < n; ++i) tau[i] = exp1(rng);
    auto recompute_rate = [&](int i) {
      double r = 0.0;
      for (int j = 0; j < n; ++j)
        if (infected[j]) r += net.weights(i, j);
      return p.beta * r;
    };
    for (int i = 0; i < n; ++i)
      if (!infected[i]) rate[i] = recompute_rate(i);

    double t = 0.0;
    while (true) {
      int next = -1;
      double t_next = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (infected[i] || rate[i] <= 0.0) continue;
        const double ti = t + (tau[i] - hazard[i]) / rate[i];
        if (ti < t_next) {
          t_next = ti;
          next = i;
        }
      }
      if (next < 0 || t_next > p.t_bar) break;
      for (int i = 0; i < n; ++i)
        if (!infected[i]) hazard[i] += rate[i] * (t_next - t);
      t = t_next;
      infected[next] = 1;
      for (int i = 0; i < n; ++i)
        if (!infected[i] && net.weights(i, next) > 0.0) rate[i] = recompute_rate(i);
    }
    for (int i = 0; i < n; ++i)
      if (infected[i]) hits[i] += 1.0;
  }

  SimulationResult out;
  out.estimate = hits / static_cast<double>(samples);
  out.std_error = (out.estimate.array() * (1.0 - out.estimate.array()) /
                   static_cast<double>(samples))
                      .sqrt()
                      .matrix();
  out.seed = seed;
  out.samples = samples;
  return out;
}

Eigen::VectorXd solve_exact_kolmogorov(const Network& net, const EpidemicParams& p) {
  validate_params(p, net.n);
  const int n = net.n;
  if (n > kKolmogorovMaxNodes)
    throw std::invalid_argument("kolmogorov: state space too large (n > 12)");
  const int states = 1 << n;

  Eigen::VectorXd p0(states);
  for (int s = 0; s < states; ++s) {
    double prob = 1.0;
    for (int i = 0; i < n; ++i) prob *= (s >> i) & 1 ? p.x0[i] : 1.0 - p.x0[i];
    p0[s] = prob;
  }

  // precompute per-state infection rates of each susceptible node
  std::vector<std::vector<std::pair<int, double>>> flows(states);
  for (int s = 0; s < states; ++s) {
    for (int i = 0; i < n; ++i) {
      if ((s >> i) & 1) continue;
      double r = 0.0;
      for (int j = 0; j < n; ++j)
        if ((s >> j) & 1) r += net.weights(i, j);
      r *= p.beta;
      if (r > 0.0) flows[s].emplace_back(s | (1 << i), r);
    }
  }

  const OdeRhs rhs = [&](double, const Eigen::VectorXd& prob) -> Eigen::VectorXd {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(states);
    for (int s = 0; s < states; ++s) {
      const double ps = prob[s];
      if (ps == 0.0) continue;
      for (const auto& [to, r] : flows[s]) {
        const double flux = r * ps;
        d[s] -= flux;
        d[to] += flux;
      }
    }
    return d;
  };

  const Eigen::VectorXd pt = ode_integrate(rhs, 0.0, p0, p.t_bar, 1e-10);

  Eigen::VectorXd marginals = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < states; ++s)
    for (int i = 0; i < n; ++i)
      if ((s >> i) & 1) marginals[i] += pt[s];
  return marginals;
}

}  // namespace epigame
