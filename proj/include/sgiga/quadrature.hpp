#pragma once

#include <span>
#include <vector>

namespace sgiga {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// q-point rule, exact for polynomials of degree 2q-1. 1 <= q <= 10.
GaussRule gauss_rule(int q);

/// Composite rule: q Gauss points on every interval between consecutive
/// breakpoints, in increasing order.
GaussRule composite_rule(std::span<const double> breakpoints, int q);

}  // namespace sgiga
