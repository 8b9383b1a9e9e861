#include "epigame/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

namespace epigame {

const char* to_string(LinkCase c) {
  switch (c) {
    case LinkCase::FullInvestment: return "full";
    case LinkCase::NoInvestment: return "none";
    case LinkCase::Interior: return "interior";
  }
  return "?";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::FullInvestment: return "full_investment";
    case Classification::NoInvestment: return "no_investment";
    case Classification::Interior: return "interior";
    case Classification::HomogeneousInterior: return "homogeneous_interior";
    case Classification::Mixed: return "mixed";
  }
  return "?";
}

namespace {

std::vector<int> investor_set(GameMode mode, int n, int k, int l) {
  if (mode == GameMode::Local) return {k, l};
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

// per-link natural residual of the box-constrained first-order conditions
double projected_residual(double u, double cap, double field) {
  const double target = std::clamp(u + field, 0.0, cap);
  return std::abs(u - target);
}

struct LinkVars {
  std::vector<Link> links;      // active links for this agent
  std::vector<double> caps;
};

LinkVars active_links(const Network& net, const Eigen::MatrixXd& others_total,
                      GameMode mode, int agent) {
  LinkVars lv;
  for (int k = 0; k < net.n; ++k) {
    for (int l = k + 1; l < net.n; ++l) {
      if (net.weights(k, l) <= 0.0) continue;
      if (mode == GameMode::Local && k != agent && l != agent) continue;
      const double cap = std::max(net.weights(k, l) - others_total(k, l), 0.0);
      lv.links.push_back({k, l});
      lv.caps.push_back(cap);
    }
  }
  return lv;
}

}  // namespace

BestResponse best_response(const Network& net, const StrategyProfile& others,
                           const GameParams& gp, int i) {
  const int n = net.n;
  Eigen::MatrixXd others_total = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    if (j != i) others_total += others.per_agent.at(j);

  const LinkVars lv = active_links(net, others_total, gp.mode, i);
  const int m = static_cast<int>(lv.links.size());

  Eigen::VectorXd u(m);
  for (int e = 0; e < m; ++e)
    u[e] = std::clamp(others.per_agent.at(i)(lv.links[e].first, lv.links[e].second), 0.0,
                      lv.caps[e]);

  auto own_matrix = [&](const Eigen::VectorXd& uu) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < m; ++e) {
      d(lv.links[e].first, lv.links[e].second) = uu[e];
      d(lv.links[e].second, lv.links[e].first) = uu[e];
    }
    return d;
  };
  auto field_at = [&](const Eigen::VectorXd& uu) {
    const Eigen::MatrixXd kernel = connectivity(net, others_total + own_matrix(uu), gp);
    Eigen::VectorXd f(m);
    for (int e = 0; e < m; ++e)
      f[e] = marginal_utility(kernel, gp, i, lv.links[e].first, lv.links[e].second) - gp.rho;
    return f;
  };
  auto pg_norm = [&](const Eigen::VectorXd& uu, const Eigen::VectorXd& f) {
    double r = 0.0;
    for (int e = 0; e < m; ++e) r = std::max(r, projected_residual(uu[e], lv.caps[e], f[e]));
    return r;
  };

  BestResponse out;
  if (m == 0) {
    out.investment = Eigen::MatrixXd::Zero(n, n);
    out.converged = true;
    return out;
  }

  int evals = 0;
  Eigen::VectorXd f = field_at(u);
  ++evals;
  double res = pg_norm(u, f);
  double gamma = 0.5 / (1.0 + f.cwiseAbs().maxCoeff());
  double best_res = res;
  Eigen::VectorXd best_u = u;
  int stale = 0;

  // projected ascent phase; one kernel evaluation per step
  const int ascent_budget = 4000;
  for (int it = 0; it < ascent_budget && res > kSolverTol && evals < kMaxSolverIters; ++it) {
    Eigen::VectorXd next(m);
    for (int e = 0; e < m; ++e) next[e] = std::clamp(u[e] + gamma * f[e], 0.0, lv.caps[e]);
    u = next;
    f = field_at(u);
    ++evals;
    res = pg_norm(u, f);
    if (res < best_res * 0.999) {
      best_res = res;
      best_u = u;
      stale = 0;
      if (it % 25 == 24) gamma *= 1.2;
    } else if (++stale >= 12) {
      gamma *= 0.5;
      u = best_u;
      f = field_at(u);
      ++evals;
      res = pg_norm(u, f);
      stale = 0;
      if (gamma < 1e-12) break;
    }
  }

  // per-link bisection polish: each marginal is nonincreasing in the link's
  // own investment, so the scalar conditions can be solved directly
  // polish well below the reported tolerance; per-link bisection is cheap
  for (int sweep = 0; sweep < 60 && (sweep == 0 || res > 1e-12) && evals < kMaxSolverIters;
       ++sweep) {
    double moved = 0.0;
    for (int e = 0; e < m; ++e) {
      const double cap = lv.caps[e];
      if (cap <= 0.0) continue;
      auto g_of = [&](double x) {
        Eigen::VectorXd trial = u;
        trial[e] = x;
        ++evals;
        return field_at(trial)[e];
      };
      const double old = u[e];
      double lo = 0.0, hi = cap;
      if (g_of(0.0) <= 0.0) {
        u[e] = 0.0;
      } else if (g_of(cap) >= 0.0) {
        u[e] = cap;
      } else {
        for (int b = 0; b < 60; ++b) {
          const double mid = 0.5 * (lo + hi);
          if (g_of(mid) > 0.0)
            lo = mid;
          else
            hi = mid;
        }
        u[e] = 0.5 * (lo + hi);
      }
      moved = std::max(moved, std::abs(u[e] - old));
    }
    f = field_at(u);
    ++evals;
    res = pg_norm(u, f);
    if (moved <= 1e-14) break;
  }

  out.investment = own_matrix(res <= best_res ? u : best_u);
  out.converged = std::min(res, best_res) <= kSolverTol;
  out.iterations = evals;
  return out;
}

VerifyResult verify_equilibrium(const Network& net, const StrategyProfile& profile,
                                const GameParams& gp, double tau) {
  validate_profile(net, profile, gp.mode);
  const int n = net.n;
  const Eigen::MatrixXd total = profile.total();
  const Eigen::MatrixXd kernel = connectivity(net, total, gp);

  VerifyResult out;
  bool all_full = true, all_none = true, all_interior = true, homogeneous = true;
  for (const auto& [k, l] : net.edges()) {
    const auto investors = investor_set(gp.mode, n, k, l);
    double gmax = 0.0;
    for (int i : investors) gmax = std::max(gmax, marginal_utility(kernel, gp, i, k, l));

    const double s = total(k, l);
    const double cap = net.weights(k, l);
    double violation = 0.0;
    LinkCase c;
    if (gmax > gp.rho + tau) {
      c = LinkCase::FullInvestment;
      violation = std::max(violation, cap - s);
      all_none = all_interior = false;
    } else if (gmax < gp.rho - tau) {
      c = LinkCase::NoInvestment;
      violation = std::max(violation, s);
      all_full = all_interior = false;
    } else {
      c = LinkCase::Interior;
      all_full = all_none = false;
    }
    // support condition: invested agents must clear the cost
    std::vector<int> eligible;
    for (int i : investors) {
      const double gi = marginal_utility(kernel, gp, i, k, l);
      if (gi >= gp.rho - tau) eligible.push_back(i);
      if (profile.per_agent.at(i)(k, l) > tau && gi < gp.rho - tau)
        violation = std::max(violation, gp.rho - gi);
    }
    // homogeneity: the mode's investors share one marginal on each link
    double gmin = gmax;
    for (int i : investors)
      gmin = std::min(gmin, marginal_utility(kernel, gp, i, k, l));
    if (gmax - gmin > tau) homogeneous = false;

    out.per_link_cases[{k, l}] = c;
    out.eligible_sets[{k, l}] = std::move(eligible);
    out.kkt_residual = std::max(out.kkt_residual, violation);
  }

  if (all_full)
    out.classification = Classification::FullInvestment;
  else if (all_none)
    out.classification = Classification::NoInvestment;
  else if (all_interior)
    out.classification =
        homogeneous ? Classification::HomogeneousInterior : Classification::Interior;
  else
    out.classification = Classification::Mixed;
  out.is_equilibrium = out.kkt_residual <= tau;
  return out;
}

namespace {

EquilibriumReport make_report(const Network& net, const GameParams& gp, StrategyProfile profile,
                              bool converged, bool oscillation, int sweeps,
                              std::vector<int> order) {
  VerifyResult v = verify_equilibrium(net, profile, gp);
  EquilibriumReport rep;
  rep.profile = std::move(profile);
  rep.kkt_residual = v.kkt_residual;
  rep.classification = v.classification;
  rep.per_link_cases = std::move(v.per_link_cases);
  rep.eligible_sets = std::move(v.eligible_sets);
  rep.converged = converged && v.is_equilibrium;
  rep.oscillation = oscillation;
  rep.sweeps = sweeps;
  rep.order = std::move(order);
  return rep;
}

}  // namespace

EquilibriumReport find_equilibrium(const Network& net, const GameParams& gp,
                                   const StrategyProfile& init, const std::vector<int>& order) {
  validate_game(gp, net.n);
  validate_profile(net, init, gp.mode);
  StrategyProfile profile = init;

  std::deque<Eigen::MatrixXd> history;
  history.push_back(profile.total());
  bool converged = false;
  bool oscillation = false;
  int round = 0;
  const int max_rounds = 500;
  for (; round < max_rounds; ++round) {
    for (int i : order) profile.per_agent[i] = best_response(net, profile, gp, i).investment;
    const Eigen::MatrixXd total = profile.total();
    const double change = (total - history.back()).cwiseAbs().maxCoeff();
    if (change <= kSolverTol) {
      converged = true;
      break;
    }
    // a revisited aggregate other than the immediate predecessor is a cycle
    for (size_t h = 0; h + 1 < history.size(); ++h) {
      if ((total - history[h]).cwiseAbs().maxCoeff() <= 1e-10) {
        oscillation = true;
        break;
      }
    }
    if (oscillation) break;
    history.push_back(total);
    if (history.size() > 8) history.pop_front();
  }
  return make_report(net, gp, std::move(profile), converged, oscillation, round + 1, order);
}

EquilibriumReport find_equilibrium(const Network& net, const GameParams& gp) {
  std::vector<int> order(net.n);
  std::iota(order.begin(), order.end(), 0);
  return find_equilibrium(net, gp, zero_profile(net.n), order);
}

EquilibriumReport reallocate_investments(const Network& net, const EquilibriumReport& eq,
                                         const GameParams& gp,
                                         const std::map<Link, std::map<int, double>>& target) {
  StrategyProfile out = eq.profile;
  for (const auto& [link, shares] : target) {
    const auto [k, l] = link;
    const double total = eq.profile.total()(k, l);
    double sum = 0.0;
    const auto elig_it = eq.eligible_sets.find(link);
    for (const auto& [agent, share] : shares) {
      if (share < 0.0) throw std::invalid_argument("reallocate: negative share");
      if (share > 0.0) {
        if (elig_it == eq.eligible_sets.end() ||
            std::find(elig_it->second.begin(), elig_it->second.end(), agent) ==
                elig_it->second.end())
          throw std::invalid_argument("reallocate: agent not eligible on link");
      }
      sum += share;
    }
    if (std::abs(sum - total) > 1e-9)
      throw std::invalid_argument("reallocate: shares do not preserve the link aggregate");
    for (int i = 0; i < net.n; ++i) {
      out.per_agent[i](k, l) = 0.0;
      out.per_agent[i](l, k) = 0.0;
    }
    for (const auto& [agent, share] : shares) {
      out.per_agent.at(agent)(k, l) = share;
      out.per_agent.at(agent)(l, k) = share;
    }
  }
  return make_report(net, gp, std::move(out), true, false, 0, eq.order);
}

EquilibriumReport induced_equilibrium(const Network& net_tilde, const Network& net,
                                      const EquilibriumReport& eq, const GameParams& gp) {
  if (eq.classification != Classification::FullInvestment &&
      eq.classification != Classification::Interior &&
      eq.classification != Classification::HomogeneousInterior)
    throw std::invalid_argument("induced_equilibrium: needs a full-investment or interior equilibrium");
  if (net_tilde.n != net.n) throw std::invalid_argument("induced_equilibrium: size mismatch");

  const Eigen::MatrixXd residual = net.weights - eq.profile.total();
  for (int k = 0; k < net.n; ++k)
    for (int l = 0; l < net.n; ++l)
      if (net_tilde.weights(k, l) < residual(k, l) - kSymmetryTol)
        throw std::invalid_argument("induced_equilibrium: target network below the equilibrium residual");

  const Eigen::MatrixXd new_total = net_tilde.weights - residual;

  // same residual, hence same kernel and same eligibility
  const Eigen::MatrixXd kernel = connectivity(net, eq.profile.total(), gp);
  const LinkEligibility eligible = [&, kernel](int k, int l) {
    std::vector<int> out;
    for (int i : investor_set(gp.mode, net.n, k, l))
      if (marginal_utility(kernel, gp, i, k, l) >= gp.rho - kKktTol) out.push_back(i);
    return out;
  };
  StrategyProfile profile =
      localize_profile(net_tilde, AggregateInvestment{new_total}, eligible);
  return make_report(net_tilde, gp, std::move(profile), true, false, 0, eq.order);
}

OptimumReport social_optimum(const Network& net, const GameParams& gp,
                             const AggregateInvestment& init) {
  validate_game(gp, net.n);
  const int n = net.n;
  const auto edges = net.edges();
  const int m = static_cast<int>(edges.size());

  Eigen::VectorXd u(m);
  for (int e = 0; e < m; ++e)
    u[e] = std::clamp(init.total(edges[e].first, edges[e].second), 0.0,
                      net.weights(edges[e].first, edges[e].second));

  auto agg_of = [&](const Eigen::VectorXd& uu) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < m; ++e) {
      d(edges[e].first, edges[e].second) = uu[e];
      d(edges[e].second, edges[e].first) = uu[e];
    }
    return d;
  };
  auto field_at = [&](const Eigen::VectorXd& uu) {
    const Eigen::MatrixXd kernel = connectivity(net, agg_of(uu), gp);
    Eigen::VectorXd f(m);
    for (int e = 0; e < m; ++e)
      f[e] = social_marginal(kernel, gp, edges[e].first, edges[e].second) - gp.rho;
    return f;
  };
  auto pg_norm = [&](const Eigen::VectorXd& uu, const Eigen::VectorXd& f) {
    double r = 0.0;
    for (int e = 0; e < m; ++e)
      r = std::max(r, projected_residual(uu[e], net.weights(edges[e].first, edges[e].second), f[e]));
    return r;
  };

  OptimumReport out;
  if (m == 0) {
    out.aggregate.total = Eigen::MatrixXd::Zero(n, n);
    out.converged = true;
    return out;
  }

  int evals = 0;
  Eigen::VectorXd f = field_at(u);
  ++evals;
  double res = pg_norm(u, f);
  double gamma = 0.5 / (1.0 + f.cwiseAbs().maxCoeff());
  double best_res = res;
  Eigen::VectorXd best_u = u;
  int stale = 0;

  for (int it = 0; it < 4000 && res > kSolverTol && evals < kMaxSolverIters; ++it) {
    for (int e = 0; e < m; ++e)
      u[e] = std::clamp(u[e] + gamma * f[e], 0.0,
                        net.weights(edges[e].first, edges[e].second));
    f = field_at(u);
    ++evals;
    res = pg_norm(u, f);
    if (res < best_res * 0.999) {
      best_res = res;
      best_u = u;
      stale = 0;
    } else if (++stale >= 12) {
      gamma *= 0.5;
      u = best_u;
      f = field_at(u);
      ++evals;
      res = pg_norm(u, f);
      stale = 0;
      if (gamma < 1e-12) break;
    }
  }
  // polish well below the reported tolerance; per-link bisection is cheap
  for (int sweep = 0; sweep < 60 && (sweep == 0 || res > 1e-12) && evals < kMaxSolverIters;
       ++sweep) {
    double moved = 0.0;
    for (int e = 0; e < m; ++e) {
      const double cap = net.weights(edges[e].first, edges[e].second);
      auto g_of = [&](double x) {
        Eigen::VectorXd trial = u;
        trial[e] = x;
        ++evals;
        return field_at(trial)[e];
      };
      const double old = u[e];
      double lo = 0.0, hi = cap;
      if (g_of(0.0) <= 0.0) {
        u[e] = 0.0;
      } else if (g_of(cap) >= 0.0) {
        u[e] = cap;
      } else {
        for (int b = 0; b < 60; ++b) {
          const double mid = 0.5 * (lo + hi);
          if (g_of(mid) > 0.0)
            lo = mid;
          else
            hi = mid;
        }
        u[e] = 0.5 * (lo + hi);
      }
      moved = std::max(moved, std::abs(u[e] - old));
    }
    f = field_at(u);
    ++evals;
    res = pg_norm(u, f);
    if (moved <= 1e-14) break;
  }

  out.aggregate.total = agg_of(res <= best_res ? u : best_u);
  out.iterations = evals;
  VerifyOptimumResult v = verify_social_optimum(net, out.aggregate, gp);
  out.kkt_residual = v.kkt_residual;
  out.classification = v.classification;
  out.per_link_cases = std::move(v.per_link_cases);
  out.converged = std::min(res, best_res) <= kSolverTol && v.is_optimum;
  return out;
}

OptimumReport social_optimum(const Network& net, const GameParams& gp) {
  return social_optimum(net, gp,
                        AggregateInvestment{Eigen::MatrixXd::Zero(net.n, net.n)});
}

VerifyOptimumResult verify_social_optimum(const Network& net, const AggregateInvestment& agg,
                                          const GameParams& gp, double tau) {
  const Eigen::MatrixXd kernel = connectivity(net, agg.total, gp);
  VerifyOptimumResult out;
  bool all_full = true, all_none = true, all_interior = true;
  for (const auto& [k, l] : net.edges()) {
    const double g = social_marginal(kernel, gp, k, l);
    const double s = agg.total(k, l);
    const double cap = net.weights(k, l);
    double violation = 0.0;
    LinkCase c;
    if (g > gp.rho + tau) {
      c = LinkCase::FullInvestment;
      violation = cap - s;
      all_none = all_interior = false;
    } else if (g < gp.rho - tau) {
      c = LinkCase::NoInvestment;
      violation = s;
      all_full = all_interior = false;
    } else {
      c = LinkCase::Interior;
      all_full = all_none = false;
    }
    out.per_link_cases[{k, l}] = c;
    out.kkt_residual = std::max(out.kkt_residual, violation);
  }
  if (all_full)
    out.classification = Classification::FullInvestment;
  else if (all_none)
    out.classification = Classification::NoInvestment;
  else if (all_interior)
    out.classification = Classification::Interior;
  else
    out.classification = Classification::Mixed;
  out.is_optimum = out.kkt_residual <= tau;
  return out;
}

namespace {

bool symmetric_complete_instance(const Network& net, const GameParams& gp, double* a,
                                 double* alpha, double* delta) {
  if (!homogeneous_x0(gp.epi, alpha)) return false;
  const double d0 = gp.delta[0];
  for (int i = 1; i < net.n; ++i)
    if (gp.delta[i] != d0) return false;
  const double a0 = net.weights(0, 1);
  if (a0 <= 0.0) return false;
  for (int k = 0; k < net.n; ++k)
    for (int l = 0; l < net.n; ++l)
      if (k != l && net.weights(k, l) != a0) return false;
  *a = a0;
  *delta = d0;
  return true;
}

}  // namespace

MultiStartResult multi_start_equilibria(const Network& net, const GameParams& gp, int n_random,
                                        std::uint64_t seed) {
  std::vector<std::vector<int>> orders;
  std::vector<int> base(net.n);
  std::iota(base.begin(), base.end(), 0);
  if (net.n <= 4) {
    std::vector<int> perm = base;
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    orders.push_back(base);
    std::mt19937_64 rng(seed);
    for (int r = 0; r < n_random; ++r) {
      std::vector<int> perm = base;
      std::shuffle(perm.begin(), perm.end(), rng);
      orders.push_back(perm);
    }
  }

  MultiStartResult out;
  bool have = false;
  auto consider = [&](const EquilibriumReport& rep) {
    ++out.runs;
    if (!rep.converged || rep.kkt_residual > kKktTol) return;
    ++out.verified;
    const double w = social_welfare(net, AggregateInvestment{rep.profile.total()}, gp);
    if (!have || w < out.worst_welfare) {
      out.worst_welfare = w;
      out.worst = rep;
    }
    if (!have || w > out.best_welfare) {
      out.best_welfare = w;
      out.best = rep;
    }
    have = true;
  };

  for (const auto& order : orders)
    consider(find_equilibrium(net, gp, zero_profile(net.n), order));

  // warm start from the uniform split when the instance is symmetric-complete
  double a, alpha, delta;
  if (symmetric_complete_instance(net, gp, &a, &alpha, &delta)) {
    const double share = a / (2.0 * net.n);  // arbitrary interior warm start
    StrategyProfile warm = zero_profile(net.n);
    for (int i = 0; i < net.n; ++i)
      for (int k = 0; k < net.n; ++k)
        for (int l = 0; l < net.n; ++l)
          if (k != l && (gp.mode == GameMode::Global || k == i || l == i))
            warm.per_agent[i](k, l) = share / (gp.mode == GameMode::Global ? net.n : 2.0);
    // keep it feasible
    StrategyProfile feas = warm;
    Eigen::MatrixXd tot = feas.total();
    for (int i = 0; i < net.n; ++i)
      for (int k = 0; k < net.n; ++k)
        for (int l = 0; l < net.n; ++l)
          if (tot(k, l) > net.weights(k, l))
            feas.per_agent[i](k, l) *= net.weights(k, l) / tot(k, l);
    consider(find_equilibrium(net, gp, feas, base));
  }

  if (!have) throw std::runtime_error("multi_start_equilibria: no verified equilibrium found");
  return out;
}

}  // namespace epigame
