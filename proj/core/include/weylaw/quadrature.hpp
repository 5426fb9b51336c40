#pragma once

#include <cstddef>
#include <vector>

namespace weylaw {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// n-point trapezoid rule on a full period [a, a + period); exact for
/// trigonometric polynomials of degree < n.
QuadratureRule periodic_trapezoid(std::size_t n, double a, double period);

}  // namespace weylaw
