#include "sgiga/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgiga {

GaussRule gauss_rule(int q) {
  if (q < 1 || q > 10) throw std::invalid_argument("gauss_rule: q must be in [1, 10]");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  // Newton iteration on P_q from Chebyshev-like initial guesses; roots are
  // symmetric so only half are computed.
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= q; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = q * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(q - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  if (q % 2 == 1) rule.nodes[static_cast<std::size_t>(q / 2)] = 0.5;
  return rule;
}

GaussRule composite_rule(std::span<const double> breakpoints, int q) {
  const GaussRule ref = gauss_rule(q);
  GaussRule out;
  for (std::size_t e = 0; e + 1 < breakpoints.size(); ++e) {
    const double a = breakpoints[e];
    const double h = breakpoints[e + 1] - a;
    for (std::size_t g = 0; g < ref.nodes.size(); ++g) {
      out.nodes.push_back(a + h * ref.nodes[g]);
      out.weights.push_back(h * ref.weights[g]);
    }
  }
  return out;
}

}  // namespace sgiga
