#pragma once

#include <vector>

namespace sfg::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi] (Golub-Welsch).
Rule gauss_legendre(int n, double lo = -1.0, double hi = 1.0);

}  // namespace sfg::quadrature
