#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sgiga/assembly.hpp"
#include "sgiga/problem.hpp"

namespace sgiga {

/// Per-direction dyadic refinement levels of one tensor component.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> levels);
  MultiIndex(std::initializer_list<int> levels) : MultiIndex(std::vector<int>(levels)) {}

  int dim() const { return static_cast<int>(levels_.size()); }
  int operator[](int l) const { return levels_[static_cast<std::size_t>(l)]; }
  const std::vector<int>& levels() const { return levels_; }
  int sum() const;
  std::string to_string() const;

  /// Lexicographic order.
  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> levels_;
};

/// Componentwise a <= b.
bool dominated_by(const MultiIndex& a, const MultiIndex& b);

struct PlanTerm {
  MultiIndex index;
  int coefficient = 0;

  bool operator==(const PlanTerm&) const = default;
};

/// Signed combination of tensor components; terms sorted lexicographically,
/// no duplicates, no zero coefficients.
struct CombinationPlan {
  int dim = 0;
  /// Simplex level J when built from combination_coefficients.
  std::optional<int> level;
  std::vector<PlanTerm> terms;

  int coefficient_sum() const;
  std::vector<MultiIndex> indices() const;
};

/// {beta >= 0 : |beta| <= J} in lexicographic order.
std::vector<MultiIndex> simplex_set(int d, int J);
/// {beta >= 0 : beta <= upper} in lexicographic order.
std::vector<MultiIndex> box_set(const MultiIndex& upper);

bool is_downward_closed(std::span<const MultiIndex> set);

/// Classical combination technique on the simplex of level J:
/// c_beta = (-1)^(J-|beta|) binom(d-1, J-|beta|).
CombinationPlan combination_coefficients(int d, int J);

/// Combination coefficients of an arbitrary downward-closed set:
/// c_beta = sum over k in {0,1}^d with beta+k in I of (-1)^|k|.
CombinationPlan general_coefficients(std::span<const MultiIndex> set);

/// Tensor component: Galerkin coefficients over the full space (boundary
/// entries zero).
struct ComponentSolution {
  MultiIndex index;
  DiscreteSpace space;
  Eigen::VectorXd coefficients;
  std::size_t dofs = 0;
  double seconds = 0.0;
  /// Geometry supplying the weight function of rational spaces.
  std::shared_ptr<const NurbsPatch> geometry;

  /// Value and parametric gradient at a parametric point.
  double value(std::span<const double> xi, Point* parametric_gradient = nullptr) const;
};

DiscreteSpace component_space(const Problem& problem, const MultiIndex& index);

/// Builds, assembles and solves the tensor component. Spaces without interior
/// dofs yield the zero function.
ComponentSolution solve_component(const Problem& problem, const MultiIndex& index);

struct CombinedValues {
  std::vector<double> values;
  std::vector<Point> gradients;
};

/// sum_beta c_beta u_beta at parametric points, accumulated in plan order.
CombinedValues evaluate_combined(const CombinationPlan& plan,
                                 std::span<const ComponentSolution> components,
                                 std::span<const Point> points, bool with_gradient);

using ComponentLookup = std::function<const ComponentSolution&(const MultiIndex&)>;

struct SurplusNorm {
  double l2 = 0.0;
  std::size_t dofs = 0;
};

/// L2 norm of the hierarchical surplus Delta_beta(u) and the dofs of the
/// beta component. Lower neighbours with a negative level are zero.
SurplusNorm surplus_norm(const Problem& problem, const MultiIndex& index,
                         const ComponentLookup& lookup);
/// Convenience overload solving the 2^d involved components.
SurplusNorm surplus_norm(const Problem& problem, const MultiIndex& index);

struct KnapsackItem {
  MultiIndex index;
  double revenue = 0.0;
  double cost = 1.0;
};

struct KnapsackSelection {
  std::vector<MultiIndex> selected;
  double revenue = 0.0;
  double cost = 0.0;
};

/// Dantzig greedy: sort by revenue/cost descending (ties lexicographic on the
/// index) and accept items while the cumulative cost stays within budget.
KnapsackSelection dantzig_select(std::span<const KnapsackItem> items, double budget);

}  // namespace sgiga
