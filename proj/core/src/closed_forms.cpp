#include "epigame/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace epigame {

const char* to_string(SymmetricRegime r) {
  switch (r) {
    case SymmetricRegime::FullInvestment: return "full_investment";
    case SymmetricRegime::NoInvestment: return "no_investment";
    case SymmetricRegime::Interior: return "interior";
  }
  return "?";
}

ChiValues chi(double h, int n) {
  if (h < 0.0) throw std::invalid_argument("chi: h must be nonnegative");
  if (n < 2) throw std::invalid_argument("chi: n must be at least 2");
  ChiValues out;
  double u = 0.0;  // u_1
  double v = h;    // v_1
  double factorial = 1.0;
  double total = 1.0;
  int small_streak = 0;
  int k = 1;
  // terms can vanish on alternate k (n = 2), so stop only after two
  // consecutive negligible terms
  for (k = 2; k <= 500; ++k) {
    const double u_next = h * (n - 1) * v;
    const double v_next = h * ((n - 2) * v + u);
    u = u_next;
    v = v_next;
    factorial *= k;
    const double term = u / factorial;
    total += term;
    if (std::abs(term) < 1e-16 * std::max(1.0, std::abs(total))) {
      if (++small_streak >= 2) break;
    } else {
      small_streak = 0;
    }
  }
  out.chi = total;
  out.chi_tilde = 2.0 * total - std::exp(-h);
  out.terms = k;
  return out;
}

SymmetricSolution symmetric_equilibrium(double a, int n, double beta, double t_bar, double alpha,
                                        double delta, double rho) {
  if (!(a > 0.0) || !(beta > 0.0) || !(t_bar > 0.0) || !(delta > 0.0) || !(rho > 0.0) ||
      !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("symmetric_equilibrium: parameters out of range");

  const double c = beta * t_bar * (1.0 - alpha);
  const double h_max = c * a;
  const double scale = delta * beta * t_bar * alpha;
  const double ratio = rho / scale;

  SymmetricSolution out;
  out.threshold_full = scale;
  out.threshold_none = scale * chi(h_max, n).chi_tilde;

  double h;
  if (ratio <= 1.0) {
    out.regime = SymmetricRegime::FullInvestment;
    h = 0.0;
  } else if (ratio >= chi(h_max, n).chi_tilde) {
    out.regime = SymmetricRegime::NoInvestment;
    h = h_max;
  } else {
    out.regime = SymmetricRegime::Interior;
    // chi~ is increasing in h, so bisection inverts rho/scale = chi~(h)
    double lo = 0.0, hi = h_max;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, h_max); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (chi(mid, n).chi_tilde < ratio)
        lo = mid;
      else
        hi = mid;
    }
    h = 0.5 * (lo + hi);
  }
  const ChiValues cv = chi(h, n);
  out.h = h;
  out.chi = cv.chi;
  out.chi_tilde = cv.chi_tilde;
  out.residual_weight = h / c;
  return out;
}

SingleAgentSolution single_agent_equilibrium(double a, int n, double beta, double t_bar,
                                             double alpha, double delta_i, double rho) {
  if (n < 3) throw std::invalid_argument("single_agent_equilibrium: n must be at least 3");
  const double c = beta * t_bar * (1.0 - alpha);
  const double scale = delta_i * beta * t_bar * alpha;
  const double root = std::sqrt(static_cast<double>(n - 1));
  auto response = [&](double mu) { return std::cosh(root * mu) + std::sinh(root * mu) / root; };

  const double mu_max = c * a;
  if (!(rho > scale) || !(rho < scale * response(mu_max)))
    throw std::invalid_argument("single_agent_equilibrium: rho outside the interior band");

  // response is increasing in mu; solve rho/scale = response(mu)
  double lo = 0.0, hi = mu_max;
  const double target = rho / scale;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (response(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  SingleAgentSolution out;
  out.mu = 0.5 * (lo + hi);
  out.h = a - out.mu / c;
  out.c_self = std::cosh(root * out.mu);
  out.c_cross = std::sinh(root * out.mu) / root;
  // stated dominance condition; sinh(x) < sqrt(n-1) cosh(x) for all real x,
  // so this is false for every admissible input
  out.dominance = std::sinh(root * out.mu) > root * std::cosh(root * out.mu);
  return out;
}

}  // namespace epigame
