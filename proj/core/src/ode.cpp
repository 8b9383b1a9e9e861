#include "epigame/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace epigame {

Eigen::VectorXd ode_integrate(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                              double tol) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  if (t1 <= t0) return y0;
  Eigen::VectorXd y = y0;
  double t = t0;
  double h = (t1 - t0) / 16.0;
  Eigen::VectorXd k1 = f(t, y);
  const double hmin = (t1 - t0) * 1e-14;
  while (t1 - t > hmin) {
    if (h > t1 - t) h = t1 - t;
    const Eigen::VectorXd k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Eigen::VectorXd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = f(t + h, ynew);
    const Eigen::VectorXd err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double scale = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(err_vec[i]) / scale);
    }
    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
    }
    const double factor = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h *= factor;
    if (h < hmin) {
      if (err > 1.0) throw std::runtime_error("ode: step size underflow");
      h = hmin;  // a successful step may legally be clipped to the remaining gap
    }
  }
  return y;
}

}  // namespace epigame
