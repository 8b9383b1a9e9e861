#include "epigame/dynamics.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "epigame/expm.hpp"
#include "epigame/ode.hpp"
#include "epigame/network_io.hpp"

namespace epigame {

void validate_params(const EpidemicParams& p, int n) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("params: beta must be positive");
  if (!(p.t_bar > 0.0)) throw std::invalid_argument("params: t_bar must be positive");
  if (p.x0.size() != n) throw std::invalid_argument("params: x0 size mismatch");
  double max_x0 = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(p.x0[i] >= 0.0 && p.x0[i] < 1.0))
      throw std::invalid_argument("params: x0 entries must lie in [0,1)");
    max_x0 = std::max(max_x0, p.x0[i]);
  }
  if (!(max_x0 > 0.0)) throw std::invalid_argument("params: x0 must have a positive entry");
}

bool homogeneous_x0(const EpidemicParams& p, double* alpha) {
  if (p.x0.size() == 0) return false;
  const double a = p.x0[0];
  for (int i = 1; i < p.x0.size(); ++i)
    if (p.x0[i] != a) return false;
  if (alpha) *alpha = a;
  return true;
}

namespace {

std::vector<double> uniform_grid(double t_bar, int grid) {
  if (grid < 2) throw std::invalid_argument("grid: need at least 2 points");
  std::vector<double> ts(grid);
  for (int g = 0; g < grid; ++g) ts[g] = t_bar * static_cast<double>(g) / (grid - 1);
  return ts;
}

}  // namespace

Trajectory integrate_mean_field(const Network& net, const EpidemicParams& p, int grid) {
  validate_params(p, net.n);
  const OdeRhs rhs = [&](double, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return (1.0 - x.array()) * (p.beta * (net.weights * x).array());
  };
  Trajectory tr;
  tr.times = uniform_grid(p.t_bar, grid);
  tr.values.reserve(grid);
  Eigen::VectorXd x = p.x0;
  double t = 0.0;
  for (double tg : tr.times) {
    x = ode_integrate(rhs, t, x, tg, 1e-10);
    t = tg;
    for (int i = 0; i < net.n; ++i)
      if (x[i] < -1e-9 || x[i] > 1.0 + 1e-9)
        throw std::logic_error("mean-field trajectory left [0,1]");
    tr.values.push_back(x);
  }
  return tr;
}

Trajectory linearized_solution(const Network& net, const EpidemicParams& p, int grid) {
  validate_params(p, net.n);
  Trajectory tr;
  tr.times = uniform_grid(p.t_bar, grid);
  tr.values.reserve(grid);
  const double dt = tr.times.size() > 1 ? tr.times[1] - tr.times[0] : 0.0;
  const Eigen::MatrixXd step = matrix_exponential(p.beta * dt * net.weights);
  Eigen::VectorXd x = p.x0;
  for (int g = 0; g < grid; ++g) {
    if (g > 0) x = step * x;
    tr.values.push_back(x);
  }
  return tr;
}

UpperBoundTrajectories closed_form_upper_bound(const Network& net, const EpidemicParams& p,
                                               int grid) {
  validate_params(p, net.n);
  const Eigen::VectorXd one_minus = Eigen::VectorXd::Ones(net.n) - p.x0;
  const Eigen::VectorXd w = p.x0.cwiseQuotient(one_minus);
  const Eigen::VectorXd y0 = (-(one_minus.array().log())).matrix();

  UpperBoundTrajectories out;
  out.y.times = uniform_grid(p.t_bar, grid);
  out.x.times = out.y.times;
  const double dt = out.y.times.size() > 1 ? out.y.times[1] - out.y.times[0] : 0.0;
  const Eigen::MatrixXd step =
      matrix_exponential(p.beta * dt * net.weights * one_minus.asDiagonal());
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(net.n, net.n);
  for (int g = 0; g < grid; ++g) {
    if (g > 0) power = power * step;
    const Eigen::VectorXd y =
        y0 + (power - Eigen::MatrixXd::Identity(net.n, net.n)) * w;
    out.y.values.push_back(y);
    out.x.values.push_back((1.0 - (-y.array()).exp()).matrix());
  }
  return out;
}

SpectralApprox spectral_approximation(const Network& net, const EpidemicParams& p) {
  validate_params(p, net.n);
  double alpha = 0.0;
  if (!homogeneous_x0(p, &alpha))
    throw std::invalid_argument("spectral_approximation: x0 must be homogeneous");

  const Eigen::MatrixXd& a = net.weights;
  const int n = net.n;
  const int max_iters = 100000;
  const double tol = 1e-10;

  auto power_iterate = [&](const Eigen::MatrixXd& m, Eigen::VectorXd v) {
    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
      Eigen::VectorXd mv = m * v;
      const double norm = mv.norm();
      if (norm == 0.0) return std::pair{0.0, v};
      mv /= norm;
      lambda = mv.dot(m * mv);
      if ((m * mv - lambda * mv).cwiseAbs().maxCoeff() <= tol * std::max(1.0, std::abs(lambda)))
        return std::pair{lambda, mv};
      v = mv;
    }
    throw std::runtime_error("spectral_approximation: power iteration did not converge");
  };

  // shift makes the spectrum nonnegative so the Perron value dominates in
  // modulus even on bipartite inputs
  const double shift = a.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd start = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  auto [lam_shifted, v] = power_iterate(a + shift * id, start);
  const double mu1 = lam_shifted - shift;
  if (v.sum() < 0.0) v = -v;

  // deflate, then look at both spectral ends for the second-largest modulus
  const Eigen::MatrixXd deflated = a - mu1 * v * v.transpose();
  Eigen::VectorXd w0;
  for (int i = 0; i < n; ++i) {
    w0 = Eigen::VectorXd::Unit(n, i) - v * v[i];
    if (w0.norm() > 1e-8) break;
  }
  w0.normalize();
  const double top = power_iterate(deflated + shift * id, w0).first - shift;
  const double bottom = shift - power_iterate(shift * id - deflated, w0).first;
  const double mu2 = std::abs(top) >= std::abs(bottom) ? top : bottom;

  SpectralApprox out;
  out.mu1 = mu1;
  out.mu2 = mu2;
  out.v = v;
  out.rank_one = std::exp(p.beta * p.t_bar * (1.0 - alpha) * mu1) * v * v.transpose();
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  const int n = tr.values.empty() ? 0 : static_cast<int>(tr.values[0].size());
  out << "t";
  for (int i = 1; i <= n; ++i) out << ",x_" << i;
  out << "\n";
  for (size_t g = 0; g < tr.times.size(); ++g) {
    out << format_double(tr.times[g]);
    for (int i = 0; i < n; ++i) out << "," << format_double(tr.values[g][i]);
    out << "\n";
  }
}

}  // namespace epigame
