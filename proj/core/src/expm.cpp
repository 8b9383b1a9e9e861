#include "epigame/expm.hpp"

#include <cmath>
#include <stdexcept>

namespace epigame {
namespace {

using Eigen::MatrixXd;

void pade3(const MatrixXd& a, MatrixXd& u, MatrixXd& v) {
  const double b[] = {120., 60., 12., 1.};
  const MatrixXd a2 = a * a;
  const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
  u = a * (b[3] * a2 + b[1] * id);
  v = b[2] * a2 + b[0] * id;
}

void pade5(const MatrixXd& a, MatrixXd& u, MatrixXd& v) {
  const double b[] = {30240., 15120., 3360., 420., 30., 1.};
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
  u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade7(const MatrixXd& a, MatrixXd& u, MatrixXd& v) {
  const double b[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd a6 = a4 * a2;
  const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
  u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade9(const MatrixXd& a, MatrixXd& u, MatrixXd& v) {
  const double b[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                      2162160.,     110880.,     3960.,       90.,        1.};
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd a6 = a4 * a2;
  const MatrixXd a8 = a6 * a2;
  const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
  u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

void pade13(const MatrixXd& a, MatrixXd& u, MatrixXd& v) {
  const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                      1187353796428800.,  129060195264000.,   10559470521600.,
                      670442572800.,      33522128640.,       1323241920.,
                      40840800.,          960960.,            16380.,
                      182.,               1.};
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd a6 = a4 * a2;
  const MatrixXd id = MatrixXd::Identity(a.rows(), a.cols());
  MatrixXd tmp = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
  tmp += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  u = a * tmp;
  v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
  v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw std::invalid_argument("matrix_exponential: non-finite entries");
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_exponential: not square");

  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  MatrixXd u, v;
  int squarings = 0;
  if (norm < 1.495585217958292e-2) {
    pade3(m, u, v);
  } else if (norm < 2.539398330063230e-1) {
    pade5(m, u, v);
  } else if (norm < 9.504178996162932e-1) {
    pade7(m, u, v);
  } else if (norm < 2.097847961257068e0) {
    pade9(m, u, v);
  } else {
    const double max_norm = 5.371920351148152;
    std::frexp(norm / max_norm, &squarings);
    if (squarings < 0) squarings = 0;
    MatrixXd scaled = m * std::ldexp(1.0, -squarings);
    pade13(scaled, u, v);
  }
  MatrixXd numer = u + v;
  MatrixXd denom = v - u;
  MatrixXd r = denom.partialPivLu().solve(numer);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace epigame
