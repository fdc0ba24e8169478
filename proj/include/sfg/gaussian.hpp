#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

namespace sfg::gaussian {

/// Unnormalized Cartesian Gaussian coef * x^l y^m z^n exp(-alpha r^2) about `center`.
struct Primitive {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double exponent = 1.0;
  double coefficient = 1.0;
  std::array<int, 3> powers{0, 0, 0};
};

using Contracted = std::vector<Primitive>;

/// Boys function F_m(T) for m = 0..max_m.
void boys(int max_m, double t, double* out);

/// Normalization of x^l y^m z^n exp(-alpha r^2) for total angular momentum <= 1.
double primitive_norm(double exponent, int angular_momentum);

double overlap(const Contracted& a, const Contracted& b);

/// <a| 1/|r - c| |b>.
double nuclear_attraction(const Contracted& a, const Contracted& b, const Eigen::Vector3d& c);

/// (ab|cd) = int a(1) b(1) c(2) d(2) / r12.
double electron_repulsion(const Contracted& a, const Contracted& b, const Contracted& c, const Contracted& d);

}  // namespace sfg::gaussian
