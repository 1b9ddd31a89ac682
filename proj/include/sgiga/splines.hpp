#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgiga {

/// Open, non-decreasing knot vector on [0, 1] defining a univariate spline
/// space of a given degree.
///
/// First and last knots are repeated exactly degree+1 times; interior
/// multiplicities lie in [1, degree+1]. Immutable after construction.
class KnotVector {
 public:
  KnotVector(int degree, std::vector<double> knots);

  int degree() const { return degree_; }
  std::span<const double> knots() const { return knots_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<int>& multiplicities() const { return multiplicities_; }

  /// Number of non-empty knot spans.
  int num_elements() const { return static_cast<int>(breakpoints_.size()) - 1; }
  /// Dimension of the spline space (number of basis functions).
  int size() const { return static_cast<int>(knots_.size()) - degree_ - 1; }

  /// Index k of the knot span [knots[k], knots[k+1]) containing xi; xi = 1
  /// maps to the last non-empty span.
  int find_span(double xi) const;

  /// Knot-span index of element e (0-based over non-empty spans).
  int element_span(int e) const { return element_spans_[static_cast<std::size_t>(e)]; }

  bool operator==(const KnotVector& other) const = default;

 private:
  int degree_;
  std::vector<double> knots_;
  std::vector<double> breakpoints_;
  std::vector<int> multiplicities_;
  std::vector<int> element_spans_;
};

/// Builds an open knot vector over sorted breakpoints, with C^regularity
/// continuity at every interior breakpoint (regularity = -1 is discontinuous).
KnotVector make_open_knot_vector(int degree, std::span<const double> breakpoints,
                                 int regularity);

/// Radical grading map on [0, 1]; gamma = 1 is the identity.
double grade_point(double t, double gamma);

/// Knot vector with 2^level elements whose breakpoints are
/// grade_point(i 2^-level, gamma).
KnotVector dyadic_level_knots(int level, int degree, int regularity, double gamma);

/// Graded dyadic breakpoints {grade_point(i 2^-level, gamma)}.
std::vector<double> dyadic_breakpoints(int level, double gamma);

/// Values (and optionally first derivatives) of the degree+1 basis functions
/// that may be nonzero at a point. Global index of values[j] is first + j.
struct BasisValues {
  int first = 0;
  std::vector<double> values;
  std::vector<double> derivatives;
};

/// Cox-de Boor evaluation. Right-continuous at interior knots, left limit at
/// xi = 1. max_deriv is 0 or 1.
BasisValues eval_basis(const KnotVector& kv, double xi, int max_deriv = 0);

/// Allocation-reusing variant of eval_basis.
void eval_basis(const KnotVector& kv, double xi, int max_deriv, BasisValues& out);

}  // namespace sgiga
