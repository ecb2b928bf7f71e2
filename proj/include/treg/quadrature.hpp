#pragma once

#include <Eigen/Dense>

namespace treg {

struct GaussLegendre {
  Eigen::VectorXd nodes;    // on [-1, 1]
  Eigen::VectorXd weights;  // sum = 2
};

/// Golub-Welsch nodes and weights from the Jacobi tridiagonal matrix.
GaussLegendre gauss_legendre(int n);

}  // namespace treg
