#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sgiga/assembly.hpp"
#include "sgiga/geometry.hpp"
#include "sgiga/problem.hpp"

namespace sgiga {

/// Tensor Gauss grid over the parametric domain with the geometry map
/// evaluated once per point. Points are ordered with direction 1 fastest.
class QuadratureGrid {
 public:
  QuadratureGrid(const NurbsPatch& patch, const std::vector<std::vector<double>>& breakpoints,
                 int q);

  /// Grid on graded dyadic breakpoints of the given per-direction levels.
  static QuadratureGrid dyadic(const NurbsPatch& patch, const std::vector<int>& levels,
                               double gamma, int q);

  int dim() const { return dim_; }
  std::size_t size() const { return weight_.size(); }
  /// Points per direction, padded with 1.
  const std::array<int, 3>& counts() const { return counts_; }
  const std::vector<double>& nodes(int direction) const { return nodes_[direction]; }

  const Point& physical(std::size_t i) const { return x_[i]; }
  /// Quadrature weight including |det J|.
  double weight(std::size_t i) const { return weight_[i]; }
  /// Geometry weight function and its parametric gradient (dim entries);
  /// empty for polynomial patches.
  bool has_weight() const { return !w_.empty(); }
  double geometry_weight(std::size_t i) const { return w_[i]; }
  const double* geometry_weight_gradient(std::size_t i) const {
    return &dw_[i * static_cast<std::size_t>(dim_)];
  }
  /// Row-major dim x dim inverse-transpose Jacobian.
  const double* inverse_jacobian_t(std::size_t i) const {
    return &jit_[i * static_cast<std::size_t>(dim_ * dim_)];
  }

 private:
  int dim_;
  std::array<int, 3> counts_{1, 1, 1};
  std::array<std::vector<double>, 3> nodes_;
  std::vector<Point> x_;
  std::vector<double> weight_;
  std::vector<double> jit_;
  std::vector<double> w_;
  std::vector<double> dw_;
};

/// Values and physical gradients (dim per point) of a field on a grid.
struct FieldSample {
  int dim = 0;
  std::vector<double> value;
  std::vector<double> gradient;

  static FieldSample zeros(const QuadratureGrid& grid, bool with_gradient);
};

/// Samples an analytic field given in physical coordinates.
FieldSample sample_function(const QuadratureGrid& grid, const ScalarField& u,
                            const VectorField& grad);

/// out += scale * (spline field with the given coefficients); rational spaces
/// are divided by the grid's geometry weight. Every grid node
/// must lie strictly inside a knot span of the space, which holds when the
/// grid breakpoints refine the space breakpoints.
void accumulate_spline(const QuadratureGrid& grid, const DiscreteSpace& space,
                       const Eigen::VectorXd& coefficients, double scale, FieldSample& out);

/// L2 norm of the value part of a sample.
double l2_norm(const QuadratureGrid& grid, const FieldSample& sample);

}  // namespace sgiga
