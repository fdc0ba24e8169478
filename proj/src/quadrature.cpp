#include "sfg/quadrature.hpp"

#include "sfg/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace sfg::quadrature {

Rule gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw PreconditionError("quadrature", "need at least one node");
  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, sub, Eigen::ComputeEigenvectors);

  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  for (int k = 0; k < n; ++k) {
    const double v0 = solver.eigenvectors()(0, k);
    rule.nodes[k] = mid + half * solver.eigenvalues()[k];
    rule.weights[k] = half * 2.0 * v0 * v0;
  }
  return rule;
}

}  // namespace sfg::quadrature
