#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "epigame/expm.hpp"

using namespace epigame;

namespace {

// 60-term Taylor series with scaling by powers of two; independent of the
// Pade path under test
Eigen::MatrixXd taylor_expm(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  int scal = 0;
  while (norm / std::ldexp(1.0, scal) > 0.5) ++scal;
  const Eigen::MatrixXd a = m / std::ldexp(1.0, scal);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 60; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  for (int s = 0; s < scal; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("exp of the zero matrix is the identity") {
  const Eigen::MatrixXd e = matrix_exponential(Eigen::MatrixXd::Zero(4, 4));
  CHECK((e - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("2x2 swap matrix gives cosh/sinh") {
  const double h = 0.5;
  Eigen::MatrixXd m(2, 2);
  m << 0, h, h, 0;
  const Eigen::MatrixXd e = matrix_exponential(m);
  // frozen from the Taylor oracle above
  CHECK(e(0, 0) == doctest::Approx(1.1276259652063807).epsilon(1e-14));
  CHECK(e(0, 1) == doctest::Approx(0.52109530549374738).epsilon(1e-14));
  CHECK(e(0, 0) == doctest::Approx(std::cosh(h)).epsilon(1e-15));
  CHECK(e(0, 1) == doctest::Approx(std::sinh(h)).epsilon(1e-15));
}

TEST_CASE("diagonal matrices exponentiate entrywise") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  const Eigen::MatrixXd e = matrix_exponential(m);
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(e(1, 1) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(std::abs(e(0, 1)) < 1e-16);
}

TEST_CASE("relative error below 1e-12 against the Taylor oracle, norms up to 10") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + int(rng() % 7);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    const double target = 0.5 + 9.5 * double(trial) / 39.0;
    m *= target / m.cwiseAbs().colwise().sum().maxCoeff();

    const Eigen::MatrixXd got = matrix_exponential(m);
    const Eigen::MatrixXd want = taylor_expm(m);
    const double rel = (got - want).norm() / want.norm();
    CHECK(rel <= 1e-12);
  }
}

TEST_CASE("non-finite entries are rejected") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(matrix_exponential(m), std::invalid_argument);
  m(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(matrix_exponential(m), std::invalid_argument);
}
