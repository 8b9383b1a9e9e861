#pragma once

#include <Eigen/Dense>
#include <functional>

namespace epigame {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

/// Integrates y' = f(t, y) from t0 to t1 with an adaptive Dormand-Prince 5(4)
/// pair at the given absolute/relative tolerance. Throws on step underflow.
Eigen::VectorXd ode_integrate(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                              double tol = 1e-10);

}  // namespace epigame
