#pragma once

namespace epigame {

/// chi(h) and chi~(h) = 2 chi(h) - e^{-h} from the factorial recursion of the
/// symmetric complete-network game:
///   u_1 = 0, v_1 = h, u_k = h (n-1) v_{k-1}, v_k = h ((n-2) v_{k-1} + u_{k-1}),
///   chi = 1 + sum u_k / k!.
/// chi equals the diagonal of exp(H) for the h-banded complete matrix H and
/// chi - e^{-h} its off-diagonal.
struct ChiValues {
  double chi = 1.0;
  double chi_tilde = 0.0;
  int terms = 0;
};

ChiValues chi(double h, int n);

enum class SymmetricRegime { FullInvestment, NoInvestment, Interior };

const char* to_string(SymmetricRegime r);

/// Symmetric equilibrium of the (alpha,delta)-symmetric game on the
/// (a)-complete network. h is the transformed residual weight
/// beta t_bar (1-alpha) (a - total link investment).
struct SymmetricSolution {
  SymmetricRegime regime = SymmetricRegime::Interior;
  double h = 0.0;
  double chi = 1.0;
  double chi_tilde = 0.0;
  double residual_weight = 0.0;   // a - total investment per link entry
  double threshold_full = 0.0;    // rho = delta beta t_bar alpha
  double threshold_none = 0.0;    // rho = delta beta t_bar alpha chi~(beta t_bar (1-alpha) a)
};

SymmetricSolution symmetric_equilibrium(double a, int n, double beta, double t_bar,
                                        double alpha, double delta, double rho);

/// Single dominant agent on the (a)-complete network: only agent i's
/// disutility is positive, and the interior condition on its own links is
///   rho = delta_i beta t_bar alpha (cosh(sqrt(n-1) mu) + sinh(sqrt(n-1) mu)/sqrt(n-1))
/// solved for mu = beta t_bar (1-alpha) (a - h) by bisection.
struct SingleAgentSolution {
  double h = 0.0;       // uniform entry investment on agent i's links
  double mu = 0.0;
  double c_self = 1.0;  // cosh(sqrt(n-1) mu)
  double c_cross = 0.0; // sinh(sqrt(n-1) mu)/sqrt(n-1)
  bool dominance = false;
};

SingleAgentSolution single_agent_equilibrium(double a, int n, double beta, double t_bar,
                                             double alpha, double delta_i, double rho);

}  // namespace epigame
