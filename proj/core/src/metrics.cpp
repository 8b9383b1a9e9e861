#include "epigame/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "epigame/expm.hpp"

namespace epigame {
namespace {

double c_factor(const GameParams& gp, double alpha) {
  return gp.epi.beta * gp.epi.t_bar * (1.0 - alpha);
}

bool complete(const Network& net) {
  for (int k = 0; k < net.n; ++k)
    for (int l = 0; l < net.n; ++l)
      if (k != l && net.weights(k, l) <= 0.0) return false;
  return true;
}

double require_homogeneous(const GameParams& gp, const char* who) {
  double alpha = 0.0;
  if (!homogeneous_x0(gp.epi, &alpha))
    throw std::invalid_argument(std::string(who) + ": x0 must be homogeneous");
  return alpha;
}

}  // namespace

WelfareMetrics price_of_anarchy(const Network& net, const GameParams& gp, int n_random_starts,
                                std::uint64_t seed) {
  validate_game(gp, net.n);
  WelfareMetrics out;
  if (gp.delta.maxCoeff() == 0.0) {
    out.degenerate = true;
    out.provenance = "degenerate: all delta zero";
    return out;
  }
  const MultiStartResult ms = multi_start_equilibria(net, gp, n_random_starts, seed);
  const OptimumReport opt = social_optimum(net, gp);
  out.welfare_worst = ms.worst_welfare;
  out.welfare_optimum = social_welfare(net, opt.aggregate, gp);
  if (out.welfare_optimum == 0.0) {
    out.degenerate = true;
  } else {
    out.poa = std::abs(out.welfare_worst) / std::abs(out.welfare_optimum);
  }
  std::ostringstream prov;
  prov << "multi-start(" << ms.runs << " runs, " << ms.verified << " verified, seed " << seed
       << "), optimum " << (opt.converged ? "converged" : "not converged");
  out.provenance = prov.str();
  return out;
}

PoaBounds poa_bound_global(const Network& net, const GameParams& gp, const EquilibriumReport& eq,
                           const OptimumReport& opt) {
  const double alpha = require_homogeneous(gp, "poa_bound_global");
  if (!complete(net)) throw std::invalid_argument("poa_bound_global: network must be complete");
  if (eq.classification == Classification::FullInvestment)
    throw std::invalid_argument("poa_bound_global: equilibrium must not be full investment");
  if (opt.classification == Classification::NoInvestment)
    throw std::invalid_argument("poa_bound_global: optimum must not be no-investment");

  const double c = c_factor(gp, alpha);
  const double n = net.n;
  const double sum_eq = eq.profile.total().sum();
  const double sum_opt = opt.aggregate.total.sum();
  PoaBounds out;
  out.bound1 = (n * n / (2.0 * c) + sum_eq) / (n / (2.0 * c) + sum_opt);
  out.bound2 = n + 2.0 * c / n * net.weights.sum();
  return out;
}

PoaBounds poa_bound_local(const Network& net, const GameParams& gp, const EquilibriumReport& eq,
                          const OptimumReport& opt) {
  const double alpha = require_homogeneous(gp, "poa_bound_local");
  if (!complete(net)) throw std::invalid_argument("poa_bound_local: network must be complete");
  if (net.n < 3) throw std::invalid_argument("poa_bound_local: needs n >= 3");
  if (eq.classification == Classification::FullInvestment)
    throw std::invalid_argument("poa_bound_local: equilibrium must not be full investment");
  if (opt.classification == Classification::NoInvestment)
    throw std::invalid_argument("poa_bound_local: optimum must not be no-investment");

  const double c = c_factor(gp, alpha);
  const double n = net.n;
  const double rho = gp.rho;
  const Eigen::MatrixXd kernel_eq = connectivity(net, eq.profile.total(), gp);

  PoaBounds out;
  double k_sum = 0.0;
  for (int i = 0; i < net.n; ++i) {
    double ki = 0.0;
    for (int k = 0; k < net.n; ++k)
      if (k != i) ki += gp.delta[i] * (kernel_eq(i, k) - kernel_eq(i, i));
    out.k_values.push_back(ki);
    k_sum += ki;
  }
  const double sum_eq = eq.profile.total().sum();
  const double sum_opt = opt.aggregate.total.sum();
  out.bound1 = ((1.0 / (2.0 * c)) * (n * n * rho + (n - 2.0) * alpha / (n - 1.0) * k_sum) +
                rho * sum_eq) /
               (rho * (n / (2.0 * c) + sum_opt));

  // network-only bound: kernel at zero investment for cross terms, full
  // investment (bare diagonal) for the self term
  const Eigen::MatrixXd kernel_zero =
      connectivity(net, Eigen::MatrixXd::Zero(net.n, net.n), gp);
  const double c_ii_full = gp.epi.beta * gp.epi.t_bar;  // exp(O) diagonal
  double k0_sum = 0.0;
  for (int i = 0; i < net.n; ++i)
    for (int k = 0; k < net.n; ++k)
      if (k != i) k0_sum += gp.delta[i] * (kernel_zero(i, k) - c_ii_full);
  out.bound2 = n + (n - 2.0) * alpha / (n * (n - 1.0) * rho) * k0_sum +
               2.0 * c / n * net.weights.sum();

  double viol = 0.0;
  for (int i = 0; i < net.n; ++i) {
    for (int k = 0; k < net.n; ++k) {
      if (k == i) continue;
      const double lo = rho + alpha * gp.delta[i] * (kernel_eq(i, k) - kernel_eq(i, i));
      const double hi = 2.0 * (rho - alpha * gp.delta[i] * kernel_eq(i, i));
      viol = std::max(viol, -lo);
      viol = std::max(viol, lo - hi);
    }
  }
  out.sandwich_violation = std::max(viol, 0.0);
  return out;
}

PokResult price_of_autarky(const Network& net, const GameParams& gp, int n_random_starts,
                           std::uint64_t seed) {
  const double alpha = require_homogeneous(gp, "price_of_autarky");
  if (!complete(net)) throw std::invalid_argument("price_of_autarky: network must be complete");
  if (net.n < 3) throw std::invalid_argument("price_of_autarky: needs n >= 3");

  GameParams local = gp;
  local.mode = GameMode::Local;
  GameParams global = gp;
  global.mode = GameMode::Global;

  const MultiStartResult ms_local = multi_start_equilibria(net, local, n_random_starts, seed);
  const MultiStartResult ms_global =
      multi_start_equilibria(net, global, n_random_starts, seed + 1);

  if (ms_local.worst.classification != Classification::HomogeneousInterior)
    throw std::invalid_argument(
        "price_of_autarky: worst local equilibrium must be homogeneous interior");
  if (ms_global.best.classification == Classification::FullInvestment)
    throw std::invalid_argument(
        "price_of_autarky: best global equilibrium must not be full investment");

  const double c = c_factor(gp, alpha);
  const double n = net.n;
  const double rho = gp.rho;
  const Eigen::MatrixXd kernel_local = connectivity(net, ms_local.worst.profile.total(), gp);

  PokResult out;
  out.welfare_worst_local = ms_local.worst_welfare;
  out.welfare_best_global = ms_global.best_welfare;
  out.pok = std::abs(out.welfare_worst_local) / std::abs(out.welfare_best_global);

  double cii_sum = 0.0;
  for (int i = 0; i < net.n; ++i) cii_sum += gp.delta[i] * kernel_local(i, i);
  const double sum_local = ms_local.worst.profile.total().sum();
  const double sum_global = ms_global.best.profile.total().sum();
  out.bound = ((1.0 / c) * (n * (n - 1.0) * rho - (n - 2.0) * alpha * cii_sum) +
               rho * sum_local) /
              (rho * (n * n / (2.0 * c) + sum_global));
  out.bound_fallback = (n / c) / (n * n / (2.0 * c) + net.weights.sum());

  double resid = 0.0;
  for (int i = 0; i < net.n; ++i) {
    for (int k = 0; k < net.n; ++k) {
      if (k == i) continue;
      const double lhs = rho + alpha * gp.delta[i] * (kernel_local(i, k) - kernel_local(i, i));
      const double rhs = 2.0 * (rho - alpha * gp.delta[i] * kernel_local(i, i));
      resid = std::max(resid, std::abs(lhs - rhs));
    }
  }
  out.identity_residual = resid;
  return out;
}

DistancingPolicy distancing_matrix(const Network& net, double kappa) {
  if (kappa < 0.0) throw std::invalid_argument("distancing_matrix: kappa must be nonnegative");
  const Eigen::VectorXd row_sums = net.weights.rowwise().sum();
  for (int i = 0; i < net.n; ++i)
    if (!(row_sums[i] > 0.0))
      throw std::invalid_argument("distancing_matrix: zero row sum at node " + std::to_string(i));

  DistancingPolicy out;
  out.kappa = kappa;
  out.interaction = kappa * row_sums.cwiseInverse().asDiagonal() * net.weights;
  out.admissible = ((net.weights - out.interaction).array() >= -kSymmetryTol).all();
  return out;
}

double evaluate_policy(const Network& net, double kappa, const GameParams& gp) {
  const DistancingPolicy pol = distancing_matrix(net, kappa);
  if (!pol.admissible) throw std::invalid_argument("evaluate_policy: kappa not admissible");
  return social_welfare_at_interaction(net, pol.interaction, gp);
}

namespace {

// Ascent derivative of the policy objective in kappa: the summed link
// marginal against rho, weighted by how fast the policy closes each link.
double policy_field(const Network& net, const GameParams& gp, double kappa) {
  const DistancingPolicy pol = distancing_matrix(net, kappa);
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - gp.epi.x0;
  const Eigen::MatrixXd kernel =
      gp.epi.beta * gp.epi.t_bar *
      matrix_exponential(gp.epi.beta * gp.epi.t_bar * pol.interaction * one_minus.asDiagonal());
  const Eigen::VectorXd row_sums = net.weights.rowwise().sum();
  double psi = 0.0;
  for (const auto& [k, l] : net.edges()) {
    const double g = social_marginal(kernel, gp, k, l);
    const double closure_rate = net.weights(k, l) / row_sums[k] + net.weights(l, k) / row_sums[l];
    psi -= (g - gp.rho) * closure_rate;
  }
  return psi;
}

}  // namespace

OptimalKappa optimal_kappa(const Network& net, const GameParams& gp, int grid_points) {
  validate_game(gp, net.n);
  const Eigen::VectorXd row_sums = net.weights.rowwise().sum();
  const double kappa_max = row_sums.minCoeff();
  if (!(kappa_max > 0.0)) throw std::invalid_argument("optimal_kappa: zero row sum");

  // psi is decreasing in kappa (the objective is concave along the path);
  // bracket the sign change on a coarse grid, then bisect
  double lo = 0.0, hi = kappa_max;
  double kappa;
  if (policy_field(net, gp, 0.0) <= 0.0) {
    kappa = 0.0;
  } else if (policy_field(net, gp, kappa_max) >= 0.0) {
    kappa = kappa_max;
  } else {
    const int grid = std::max(grid_points, 4);
    for (int g = 1; g < grid; ++g) {
      const double k = kappa_max * g / (grid - 1.0);
      if (policy_field(net, gp, k) <= 0.0) {
        lo = kappa_max * (g - 1) / (grid - 1.0);
        hi = k;
        break;
      }
    }
    for (int it = 0; it < 100 && hi - lo > 1e-13 * std::max(1.0, kappa_max); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (policy_field(net, gp, mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    kappa = 0.5 * (lo + hi);
  }

  OptimalKappa out;
  out.kappa = kappa;
  out.welfare = evaluate_policy(net, kappa, gp);
  const OptimumReport opt = social_optimum(net, gp);
  out.epsilon_gap = social_welfare(net, opt.aggregate, gp) - out.welfare;
  return out;
}

}  // namespace epigame
