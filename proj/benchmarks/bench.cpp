#include <benchmark/benchmark.h>

#include <random>

#include "epigame/ctmc.hpp"
#include "epigame/dynamics.hpp"
#include "epigame/expm.hpp"
#include "epigame/game.hpp"
#include "epigame/solvers.hpp"

using namespace epigame;

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = unif(rng);
      w(i, j) = v;
      w(j, i) = v;
    }
  return w;
}

GameParams bench_game(int n) {
  GameParams gp;
  gp.delta = Eigen::VectorXd::Constant(n, 1.0);
  gp.epi.beta = 0.6;
  gp.epi.t_bar = 1.2;
  gp.epi.x0 = Eigen::VectorXd::Constant(n, 0.3);
  gp.rho = 0.35;
  gp.mode = GameMode::Global;
  return gp;
}

}  // namespace

static void MatrixExponential(benchmark::State& state) {
  const int n = int(state.range(0));
  const Eigen::MatrixXd m = random_symmetric(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(MatrixExponential)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void ConnectivityKernel(benchmark::State& state) {
  const int n = int(state.range(0));
  const Network net = validate_network(random_symmetric(n, 2));
  const GameParams gp = bench_game(n);
  const Eigen::MatrixXd agg = 0.3 * net.weights;
  for (auto _ : state) benchmark::DoNotOptimize(connectivity(net, agg, gp));
}
BENCHMARK(ConnectivityKernel)->RangeMultiplier(2)->Range(4, 32);

static void MeanFieldIntegration(benchmark::State& state) {
  const int n = int(state.range(0));
  const Network net = validate_network(random_symmetric(n, 3));
  EpidemicParams p;
  p.beta = 0.6;
  p.t_bar = 1.5;
  p.x0 = Eigen::VectorXd::Constant(n, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_mean_field(net, p));
}
BENCHMARK(MeanFieldIntegration)->RangeMultiplier(2)->Range(4, 32);

static void ExactKolmogorov(benchmark::State& state) {
  const int n = int(state.range(0));
  const Network net = validate_network(random_symmetric(n, 4));
  EpidemicParams p;
  p.beta = 0.6;
  p.t_bar = 1.0;
  p.x0 = Eigen::VectorXd::Constant(n, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_kolmogorov(net, p));
}
BENCHMARK(ExactKolmogorov)->DenseRange(4, 10, 2);

static void CtmcSimulation(benchmark::State& state) {
  const Network net = validate_network(random_symmetric(8, 5));
  EpidemicParams p;
  p.beta = 0.6;
  p.t_bar = 1.0;
  p.x0 = Eigen::VectorXd::Constant(8, 0.3);
  const int samples = int(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_exact_ctmc(net, p, samples, 7));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(CtmcSimulation)->RangeMultiplier(4)->Range(256, 16384);

static void BestResponseSolve(benchmark::State& state) {
  const int n = int(state.range(0));
  const Network net = validate_network(random_symmetric(n, 6));
  const GameParams gp = bench_game(n);
  const StrategyProfile others = zero_profile(n);
  for (auto _ : state) benchmark::DoNotOptimize(best_response(net, others, gp, 0));
}
BENCHMARK(BestResponseSolve)->DenseRange(3, 7, 1);

static void EquilibriumSearch(benchmark::State& state) {
  const int n = int(state.range(0));
  const Network net = validate_network(random_symmetric(n, 7));
  const GameParams gp = bench_game(n);
  for (auto _ : state) benchmark::DoNotOptimize(find_equilibrium(net, gp));
}
BENCHMARK(EquilibriumSearch)->DenseRange(3, 6, 1);

BENCHMARK_MAIN();
