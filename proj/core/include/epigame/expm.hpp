#pragma once

#include <Eigen/Dense>

namespace epigame {

/// Dense matrix exponential by scaling-and-squaring with a degree-13 Pade
/// approximant (squaring count from the 1-norm). Throws on non-finite input.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& m);

}  // namespace epigame
