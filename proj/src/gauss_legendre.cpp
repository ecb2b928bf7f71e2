#include "treg/quadrature.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace treg {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k)
    sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  GaussLegendre out;
  out.nodes = es.eigenvalues();
  out.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    out.weights[k] = 2.0 * v0 * v0;
  }
  return out;
}

}  // namespace treg
