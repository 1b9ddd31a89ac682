#include "sgiga/splines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sgiga {

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) throw std::invalid_argument("KnotVector: negative degree");
  const auto p = static_cast<std::size_t>(degree_);
  if (knots_.size() < 2 * p + 2)
    throw std::invalid_argument("KnotVector: too few knots for degree " +
                                std::to_string(degree_));
  if (!std::is_sorted(knots_.begin(), knots_.end()))
    throw std::invalid_argument("KnotVector: knots must be non-decreasing");
  if (knots_.front() != 0.0 || knots_.back() != 1.0)
    throw std::invalid_argument("KnotVector: knots must span [0, 1]");

  for (std::size_t i = 0; i < knots_.size();) {
    std::size_t j = i;
    while (j < knots_.size() && knots_[j] == knots_[i]) ++j;
    breakpoints_.push_back(knots_[i]);
    multiplicities_.push_back(static_cast<int>(j - i));
    i = j;
  }
  if (multiplicities_.front() != degree_ + 1 || multiplicities_.back() != degree_ + 1)
    throw std::invalid_argument("KnotVector: end knots must have multiplicity degree+1");
  for (std::size_t i = 1; i + 1 < multiplicities_.size(); ++i)
    if (multiplicities_[i] > degree_ + 1)
      throw std::invalid_argument("KnotVector: interior multiplicity exceeds degree+1");

  for (std::size_t k = 0; k + 1 < knots_.size(); ++k)
    if (knots_[k] < knots_[k + 1]) element_spans_.push_back(static_cast<int>(k));
}

int KnotVector::find_span(double xi) const {
  const int n = size();
  if (xi >= knots_[static_cast<std::size_t>(n)]) return n - 1;
  auto first = knots_.begin() + degree_ + 1;
  auto last = knots_.begin() + n + 1;
  auto it = std::upper_bound(first, last, xi);
  return static_cast<int>(it - knots_.begin()) - 1;
}

KnotVector make_open_knot_vector(int degree, std::span<const double> breakpoints,
                                 int regularity) {
  if (degree < 0) throw std::invalid_argument("make_open_knot_vector: negative degree");
  if (regularity < -1 || regularity > degree - 1)
    throw std::invalid_argument("make_open_knot_vector: regularity out of range [-1, p-1]");
  if (breakpoints.size() < 2)
    throw std::invalid_argument("make_open_knot_vector: need at least two breakpoints");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw std::invalid_argument("make_open_knot_vector: breakpoints must start at 0 and end at 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("make_open_knot_vector: breakpoints must be strictly increasing");

  const int interior = degree - regularity;
  std::vector<double> knots;
  knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 0.0);
  for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i)
    knots.insert(knots.end(), static_cast<std::size_t>(interior), breakpoints[i]);
  knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), 1.0);
  return KnotVector(degree, std::move(knots));
}

double grade_point(double t, double gamma) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("grade_point: t outside [0, 1]");
  if (!(gamma >= 1.0)) throw std::invalid_argument("grade_point: gamma must be >= 1");
  const double scale = std::pow(0.5, gamma - 1.0);
  if (t <= 0.5) return std::pow(t, gamma) / scale;
  return 1.0 - std::pow(1.0 - t, gamma) / scale;
}

std::vector<double> dyadic_breakpoints(int level, double gamma) {
  if (level < 0) throw std::invalid_argument("dyadic_breakpoints: negative level");
  if (!(gamma >= 1.0)) throw std::invalid_argument("dyadic_breakpoints: gamma must be >= 1");
  const int n = 1 << level;
  std::vector<double> z(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    z[static_cast<std::size_t>(i)] = grade_point(static_cast<double>(i) / n, gamma);
  z.front() = 0.0;
  z.back() = 1.0;
  return z;
}

KnotVector dyadic_level_knots(int level, int degree, int regularity, double gamma) {
  const auto z = dyadic_breakpoints(level, gamma);
  return make_open_knot_vector(degree, z, regularity);
}

void eval_basis(const KnotVector& kv, double xi, int max_deriv, BasisValues& out) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw std::invalid_argument("eval_basis: xi outside [0, 1]");
  if (max_deriv < 0 || max_deriv > 1)
    throw std::invalid_argument("eval_basis: max_deriv must be 0 or 1");

  const int p = kv.degree();
  const auto U = kv.knots();
  const int k = kv.find_span(xi);
  const auto np = static_cast<std::size_t>(p + 1);

  // ndu[j][r]: lower triangle holds knot differences, upper holds basis values
  // of increasing degree.
  double ndu[16][16];
  double left[16];
  double right[16];
  if (p > 14) throw std::invalid_argument("eval_basis: degree too large");
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - U[static_cast<std::size_t>(k + 1 - j)];
    right[j] = U[static_cast<std::size_t>(k + j)] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  out.first = k - p;
  out.values.resize(np);
  for (int r = 0; r <= p; ++r) out.values[static_cast<std::size_t>(r)] = ndu[r][p];

  if (max_deriv == 0) {
    out.derivatives.clear();
    return;
  }
  out.derivatives.assign(np, 0.0);
  if (p == 0) return;
  for (int r = 0; r <= p; ++r) {
    double d = 0.0;
    if (r >= 1) d += ndu[r - 1][p - 1] / ndu[p][r - 1];
    if (r <= p - 1) d -= ndu[r][p - 1] / ndu[p][r];
    out.derivatives[static_cast<std::size_t>(r)] = p * d;
  }
}

BasisValues eval_basis(const KnotVector& kv, double xi, int max_deriv) {
  BasisValues out;
  eval_basis(kv, xi, max_deriv, out);
  return out;
}

}  // namespace sgiga
