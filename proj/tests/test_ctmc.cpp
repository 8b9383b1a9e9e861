#include <doctest.h>

#include <random>

#include "epigame/ctmc.hpp"

using namespace epigame;

namespace {

EpidemicParams params(double beta, double t_bar, const Eigen::VectorXd& x0) {
  EpidemicParams p;
  p.beta = beta;
  p.t_bar = t_bar;
  p.x0 = x0;
  return p;
}

}  // namespace

TEST_CASE("kolmogorov marginals stay at x0 without edges between infected") {
  // 2-node network, one node surely healthy: only the cross link matters
  const Network net = complete_network(2, 1.0);
  Eigen::VectorXd x0(2);
  x0 << 0.5, 0.0;
  const Eigen::VectorXd m = solve_exact_kolmogorov(net, params(1.0, 1.0, x0));
  CHECK(m[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(m[1] > 0.0);
  // node 2 infected only via node 1: P = x0_1 * P[T<=1], T ~ Exp(1)
  CHECK(m[1] == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-9));
}

TEST_CASE("kolmogorov at t -> 0 returns the initial probabilities") {
  const Network net = complete_network(3, 1.0);
  Eigen::VectorXd x0(3);
  x0 << 0.1, 0.4, 0.0;
  EpidemicParams p = params(1.0, 1e-9, x0);
  const Eigen::VectorXd m = solve_exact_kolmogorov(net, p);
  for (int i = 0; i < 3; ++i) CHECK(m[i] == doctest::Approx(x0[i]).epsilon(1e-6));
}

TEST_CASE("kolmogorov rejects large state spaces") {
  const Network net = complete_network(13, 1.0);
  CHECK_THROWS_AS(
      solve_exact_kolmogorov(net, params(1.0, 1.0, Eigen::VectorXd::Constant(13, 0.5))),
      std::invalid_argument);
}

TEST_CASE("monte carlo at t_bar ~ 0 reproduces the initial draw frequencies") {
  const Network net = complete_network(2, 1.0);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(2, 0.37);
  const SimulationResult r = simulate_exact_ctmc(net, params(1.0, 1e-12, x0), 40000, 5);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(r.estimate[i] - 0.37) <= 3.0 * r.std_error[i] + 1e-12);
}

TEST_CASE("monte carlo is deterministic given the seed") {
  const Network net = complete_network(3, 0.8);
  const EpidemicParams p = params(0.9, 1.0, Eigen::VectorXd::Constant(3, 0.3));
  const SimulationResult a = simulate_exact_ctmc(net, p, 2000, 99);
  const SimulationResult b = simulate_exact_ctmc(net, p, 2000, 99);
  CHECK(a.estimate == b.estimate);
  const SimulationResult c = simulate_exact_ctmc(net, p, 2000, 100);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("monte carlo agrees with the 4-state forward equations") {
  const Network net = complete_network(2, 1.0);
  const EpidemicParams p = params(1.0, 1.0, Eigen::VectorXd::Constant(2, 0.5));
  const Eigen::VectorXd exact = solve_exact_kolmogorov(net, p);
  const SimulationResult sim = simulate_exact_ctmc(net, p, 100000, 42);
  for (int i = 0; i < 2; ++i)
    CHECK(std::abs(sim.estimate[i] - exact[i]) <= 3.0 * sim.std_error[i]);
}

TEST_CASE("exact marginals never exceed the mean field") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + int(rng() % 5);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = unif(rng);
        w(i, j) = w(j, i) = v;
      }
    const Network net = validate_network(w);
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0[i] = 0.1 + 0.5 * unif(rng);
    const EpidemicParams p = params(0.8, 1.2, x0);
    const Eigen::VectorXd exact = solve_exact_kolmogorov(net, p);
    const Eigen::VectorXd mf = integrate_mean_field(net, p, 2).values.back();
    for (int i = 0; i < n; ++i) CHECK(exact[i] <= mf[i] + 1e-8);
  }
}
