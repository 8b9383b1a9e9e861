#include <doctest.h>

#include <cmath>
#include <random>

#include "epigame/closed_forms.hpp"
#include "epigame/metrics.hpp"

using namespace epigame;

namespace {

GameParams symmetric_game(int n, double beta, double t_bar, double alpha, double delta,
                          double rho, GameMode mode = GameMode::Global) {
  GameParams gp;
  gp.delta = Eigen::VectorXd::Constant(n, delta);
  gp.epi.beta = beta;
  gp.epi.t_bar = t_bar;
  gp.epi.x0 = Eigen::VectorXd::Constant(n, alpha);
  gp.rho = rho;
  gp.mode = mode;
  return gp;
}

double band_rho(int n, double a, double beta, double t_bar, double alpha, double delta,
                double lo_ratio, double frac) {
  const double h_max = beta * t_bar * (1.0 - alpha) * a;
  const double hi_ratio = chi(h_max, n).chi_tilde;
  return delta * beta * t_bar * alpha *
         std::exp((1.0 - frac) * std::log(lo_ratio) + frac * std::log(hi_ratio));
}

}  // namespace

TEST_CASE("price_of_anarchy guards the all-zero-delta instance") {
  const Network net = complete_network(3, 1.0);
  GameParams gp = symmetric_game(3, 0.6, 1.0, 0.3, 1.0, 0.5);
  gp.delta.setZero();
  const WelfareMetrics m = price_of_anarchy(net, gp, 2, 1);
  CHECK(m.degenerate);
}

TEST_CASE("identical equilibrium and optimum give PoA = 1") {
  // prohibitive cost: both sides settle at zero investment
  const Network net = complete_network(3, 1.0);
  const GameParams gp = symmetric_game(3, 0.6, 1.0, 0.3, 1.0, 100.0);
  const WelfareMetrics m = price_of_anarchy(net, gp, 2, 1);
  CHECK_FALSE(m.degenerate);
  CHECK(m.poa == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("symmetric interior instance reproduces the closed-form ratio") {
  const int n = 4;
  const double a = 1.0, beta = 0.5, t_bar = 1.8, alpha = 0.25, delta = 1.2;
  // the closed-form ratio needs rho/(delta beta t alpha) > 2
  const double rho = band_rho(n, a, beta, t_bar, alpha, delta, 2.0, 0.5);
  const Network net = complete_network(n, a);
  const GameParams gp = symmetric_game(n, beta, t_bar, alpha, delta, rho);

  const SymmetricSolution sym = symmetric_equilibrium(a, n, beta, t_bar, alpha, delta, rho);
  REQUIRE(sym.regime == SymmetricRegime::Interior);

  const WelfareMetrics m = price_of_anarchy(net, gp, 4, 3);
  const MultiStartResult ms = multi_start_equilibria(net, gp, 4, 3);
  const OptimumReport opt = social_optimum(net, gp);
  REQUIRE(opt.converged);

  const double c = beta * t_bar * (1.0 - alpha);
  const double sum_eq = ms.worst.profile.total().sum();
  const double sum_opt = opt.aggregate.total.sum();
  const double formula =
      (n * n * rho / (2.0 * c) -
       n * (n - 2.0) * delta * alpha * std::exp(-sym.h) / (2.0 * (1.0 - alpha)) +
       rho * sum_eq) /
      (n * rho / (2.0 * c) + rho * sum_opt);
  CHECK(m.poa == doctest::Approx(formula).epsilon(1e-6));
}

TEST_CASE("global bound chain on a symmetric interior instance") {
  const int n = 4;
  const double a = 1.0, beta = 0.5, t_bar = 1.8, alpha = 0.25, delta = 1.2;
  const double rho = band_rho(n, a, beta, t_bar, alpha, delta, 2.0, 0.5);
  const Network net = complete_network(n, a);
  const GameParams gp = symmetric_game(n, beta, t_bar, alpha, delta, rho);

  const MultiStartResult ms = multi_start_equilibria(net, gp, 4, 3);
  const OptimumReport opt = social_optimum(net, gp);
  const PoaBounds b = poa_bound_global(net, gp, ms.worst, opt);
  const WelfareMetrics m = price_of_anarchy(net, gp, 4, 3);
  CHECK(m.poa <= b.bound1 + 1e-6);
  CHECK(b.bound1 <= b.bound2 + 1e-9);
}

TEST_CASE("global bound checks its hypotheses") {
  const int n = 3;
  const Network net = complete_network(n, 1.0);
  const double scale = 1.0 * 0.6 * 1.0 * 0.3;

  SUBCASE("full-investment equilibrium refused") {
    const GameParams cheap = symmetric_game(n, 0.6, 1.0, 0.3, 1.0, 0.5 * scale);
    const EquilibriumReport eq = find_equilibrium(net, cheap);
    REQUIRE(eq.classification == Classification::FullInvestment);
    const OptimumReport opt = social_optimum(net, cheap);
    CHECK_THROWS_AS(poa_bound_global(net, cheap, eq, opt), std::invalid_argument);
  }
  SUBCASE("no-investment optimum refused") {
    const GameParams dear = symmetric_game(n, 0.6, 1.0, 0.3, 1.0, 100.0);
    const EquilibriumReport eq = find_equilibrium(net, dear);
    const OptimumReport opt = social_optimum(net, dear);
    REQUIRE(opt.classification == Classification::NoInvestment);
    CHECK_THROWS_AS(poa_bound_global(net, dear, eq, opt), std::invalid_argument);
  }
  SUBCASE("heterogeneous x0 refused") {
    GameParams het = symmetric_game(n, 0.6, 1.0, 0.3, 1.0, 0.5);
    het.epi.x0[0] = 0.6;
    const EquilibriumReport eq = find_equilibrium(net, het);
    const OptimumReport opt = social_optimum(net, het);
    CHECK_THROWS_AS(poa_bound_global(net, het, eq, opt), std::invalid_argument);
  }
}

TEST_CASE("local bound chain with K terms and the kernel sandwich") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int done = 0;
  for (int trial = 0; trial < 12 && done < 4; ++trial) {
    const int n = 3 + int(rng() % 3);
    const double a = 0.5 + 0.5 * unif(rng);
    const double beta = 0.4 + 0.4 * unif(rng);
    const double t_bar = 0.9 + 0.7 * unif(rng);
    const double alpha = 0.15 + 0.25 * unif(rng);
    const Network net = complete_network(n, a);
    GameParams gp = symmetric_game(n, beta, t_bar, alpha, 1.0,
                                   band_rho(n, a, beta, t_bar, alpha, 1.0, 1.15, 0.45),
                                   GameMode::Local);
    gp.delta = Eigen::VectorXd::NullaryExpr(n, [&](int) { return 0.9 + 0.2 * unif(rng); });

    const MultiStartResult ms = multi_start_equilibria(net, gp, 4, trial);
    const OptimumReport opt = social_optimum(net, gp);
    if (!opt.converged) continue;
    if (ms.worst.classification == Classification::FullInvestment) continue;
    if (opt.classification == Classification::NoInvestment) continue;
    bool has_full_link = false;
    for (const auto& [link, c] : ms.worst.per_link_cases)
      if (c == LinkCase::FullInvestment) has_full_link = true;
    if (has_full_link) continue;

    const PoaBounds b = poa_bound_local(net, gp, ms.worst, opt);
    const double poa = std::abs(ms.worst_welfare) /
                       std::abs(social_welfare(net, opt.aggregate, gp));
    CHECK(poa <= b.bound1 + 1e-6);
    CHECK(b.bound1 <= b.bound2 + 1e-6);
    CHECK(b.sandwich_violation <= 1e-6);
    CHECK(int(b.k_values.size()) == n);
    ++done;
  }
  CHECK(done >= 3);
}

TEST_CASE("symmetric instances give identical K values") {
  const int n = 4;
  const Network net = complete_network(n, 1.0);
  const double rho = band_rho(n, 1.0, 0.6, 1.2, 0.3, 1.0, 1.2, 0.5);
  const GameParams gp = symmetric_game(n, 0.6, 1.2, 0.3, 1.0, rho, GameMode::Local);
  const MultiStartResult ms = multi_start_equilibria(net, gp, 4, 5);
  const OptimumReport opt = social_optimum(net, gp);
  const PoaBounds b = poa_bound_local(net, gp, ms.worst, opt);
  for (double k : b.k_values) CHECK(k == doctest::Approx(b.k_values[0]).epsilon(1e-9));
}

TEST_CASE("price of autarky on symmetric instances is one and satisfies its bound") {
  const int n = 4;
  const double a = 1.0, beta = 0.5, t_bar = 1.8, alpha = 0.25, delta = 1.2;
  const double rho = band_rho(n, a, beta, t_bar, alpha, delta, 2.0, 0.5);
  const Network net = complete_network(n, a);
  const GameParams gp = symmetric_game(n, beta, t_bar, alpha, delta, rho);

  const PokResult pok = price_of_autarky(net, gp, 4, 11);
  CHECK(pok.pok == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pok.pok >= pok.bound - 1e-6);
  CHECK(pok.bound >= pok.bound_fallback - 1e-9);
  CHECK(pok.identity_residual <= 1e-6);
}

TEST_CASE("price of autarky rejects non-homogeneous-interior locals") {
  const Network net = complete_network(4, 1.0);
  const GameParams dear = symmetric_game(4, 0.6, 1.0, 0.3, 1.0, 100.0);
  CHECK_THROWS_AS(price_of_autarky(net, dear, 2, 1), std::invalid_argument);
}

TEST_CASE("distancing matrix row sums and admissibility") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.3, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double v = unif(rng);
      w(i, j) = w(j, i) = v;
    }
  const Network net = validate_network(w);
  const double kappa = 0.5 * net.weights.rowwise().sum().minCoeff();
  const DistancingPolicy pol = distancing_matrix(net, kappa);
  CHECK(pol.admissible);
  for (int i = 0; i < 4; ++i)
    CHECK(pol.interaction.row(i).sum() == doctest::Approx(kappa).epsilon(1e-12));

  SUBCASE("kappa = 0 suppresses everything") {
    const DistancingPolicy zero = distancing_matrix(net, 0.0);
    CHECK(zero.interaction.isZero());
    CHECK(zero.admissible);
  }
  SUBCASE("kappa at the minimum row sum is the admissibility boundary") {
    const double edge = net.weights.rowwise().sum().minCoeff();
    CHECK(distancing_matrix(net, edge).admissible);
    CHECK_FALSE(distancing_matrix(net, edge * 1.01).admissible);
    CHECK_THROWS_AS(evaluate_policy(net, edge * 1.01, symmetric_game(4, 1, 1, 0.3, 1, 1)),
                    std::invalid_argument);
  }
  SUBCASE("zero row sums are rejected") {
    Eigen::MatrixXd disc = Eigen::MatrixXd::Zero(3, 3);
    disc(0, 1) = disc(1, 0) = 1.0;
    CHECK_THROWS_AS(distancing_matrix(validate_network(disc), 0.5), std::invalid_argument);
  }
}

TEST_CASE("uniform networks spread kappa evenly") {
  const Network net = complete_network(3, 1.0);  // row sums 2a
  const DistancingPolicy pol = distancing_matrix(net, 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(pol.interaction(i, j) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("policy welfare at kappa = 0 equals full-suppression welfare") {
  const Network net = complete_network(3, 0.8);
  const GameParams gp = symmetric_game(3, 0.7, 1.1, 0.3, 1.0, 0.6);
  CHECK(evaluate_policy(net, 0.0, gp) ==
        doctest::Approx(social_welfare(net, AggregateInvestment{net.weights}, gp))
            .epsilon(1e-12));
}

TEST_CASE("cheap cost pushes the optimal distancing level to zero") {
  const int n = 4;
  const Network net = complete_network(n, 1.0);
  const double scale = 1.0 * 0.6 * 1.2 * 0.3;
  const GameParams gp = symmetric_game(n, 0.6, 1.2, 0.3, 1.0, 1.5 * scale);  // 2*scale >= rho
  const OptimalKappa ok = optimal_kappa(net, gp);
  CHECK(ok.kappa == 0.0);
  const OptimumReport opt = social_optimum(net, gp);
  CHECK((opt.aggregate.total - net.weights).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(std::abs(ok.epsilon_gap) <= 1e-9);
}

TEST_CASE("uniform complete networks match the scalar exponential root") {
  const int n = 4;
  const double a = 1.0, beta = 0.6, t_bar = 1.2, alpha = 0.3, delta = 1.0;
  const Network net = complete_network(n, a);
  const double scale = delta * beta * t_bar * alpha;
  const double c = beta * t_bar * (1.0 - alpha);
  for (double mult : {2.5, 3.5}) {
    const GameParams gp = symmetric_game(n, beta, t_bar, alpha, delta, mult * scale);
    const OptimalKappa ok = optimal_kappa(net, gp);
    const double root = std::log(mult / 2.0) / c;
    CHECK(ok.kappa == doctest::Approx(root).epsilon(1e-4));
  }
}

TEST_CASE("policy welfare stays within the optimum on uniform instances") {
  const int n = 4;
  const Network net = complete_network(n, 1.0);
  const GameParams gp = symmetric_game(n, 0.6, 1.2, 0.3, 1.0, 2.5 * 0.6 * 1.2 * 0.3);
  const OptimalKappa ok = optimal_kappa(net, gp);
  CHECK(ok.epsilon_gap >= -1e-9);
  CHECK(ok.epsilon_gap <= 1e-6);  // the kappa family contains the uniform optimum
}
