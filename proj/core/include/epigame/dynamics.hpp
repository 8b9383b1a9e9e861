#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "epigame/network.hpp"

namespace epigame {

inline constexpr int kDefaultGrid = 257;

/// SI epidemic parameters: unit contagion rate, horizon, and initial
/// infection probabilities (all in [0,1), at least one positive).
struct EpidemicParams {
  double beta = 1.0;
  double t_bar = 1.0;
  Eigen::VectorXd x0;
};

void validate_params(const EpidemicParams& p, int n);

/// True iff all x0 entries share one value alpha.
bool homogeneous_x0(const EpidemicParams& p, double* alpha = nullptr);

/// Node infection probabilities sampled on an increasing time grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;

  int grid_size() const { return static_cast<int>(times.size()); }
};

/// N-intertwined mean-field ODE dx_i/dt = (1-x_i) beta sum_j a_ij x_j,
/// integrated with an adaptive Dormand-Prince pair at tolerance 1e-10 and
/// reported on a fixed grid of `grid` points over [0, t_bar].
Trajectory integrate_mean_field(const Network& net, const EpidemicParams& p,
                                int grid = kDefaultGrid);

/// Solution of the linearized dynamics, x(t) = exp(beta t A) x0.
Trajectory linearized_solution(const Network& net, const EpidemicParams& p,
                               int grid = kDefaultGrid);

/// Log-domain upper bound y(t) = -ln(1-x0)
///   + [exp(beta t A diag(1-x0)) - I] diag(1-x0)^{-1} x0  and x = 1 - e^{-y}.
struct UpperBoundTrajectories {
  Trajectory y;
  Trajectory x;
};

UpperBoundTrajectories closed_form_upper_bound(const Network& net, const EpidemicParams& p,
                                               int grid = kDefaultGrid);

/// Rank-one spectral surrogate of exp(beta t_bar (1-alpha) A) built from the
/// Perron pair of the (residual) network.
struct SpectralApprox {
  double mu1 = 0.0;       // largest eigenvalue
  double mu2 = 0.0;       // second-largest in modulus
  Eigen::VectorXd v;      // unit Perron eigenvector
  Eigen::MatrixXd rank_one;

  double spectral_gap() const { return std::abs(mu1 - mu2); }
};

/// Power iteration (with one deflation step for mu2) to tolerance 1e-10,
/// at most 1e5 iterations. Requires homogeneous x0.
SpectralApprox spectral_approximation(const Network& net, const EpidemicParams& p);

/// Trajectory CSV with header "t,x_1,...,x_n".
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

}  // namespace epigame
