#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgiga/splines.hpp"

namespace sgiga {

/// Point in up to three dimensions; unused trailing coordinates are zero.
using Point = std::array<double, 3>;
/// jac[i][k] = d x_i / d xi_k.
using Matrix3 = std::array<std::array<double, 3>, 3>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MappedPoint {
  Point x{};
  Matrix3 jacobian{};
  double det = 0.0;
  /// Weight function W = sum w_i N_i and its parametric gradient (1 and 0
  /// for polynomial patches).
  double weight = 1.0;
  std::array<double, 3> weight_gradient{};
};

/// Tensor-product NURBS map F from [0,1]^d onto the physical domain.
///
/// Control points are ordered with the first parametric direction running
/// fastest.
class NurbsPatch {
 public:
  NurbsPatch(std::vector<KnotVector> knots, std::vector<Point> points,
             std::vector<double> weights);

  int dim() const { return static_cast<int>(knots_.size()); }
  const std::vector<KnotVector>& knots() const { return knots_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_polynomial() const { return polynomial_; }

  /// Maps a parametric point; throws GeometryError if det J <= 0 there.
  MappedPoint map_point(std::span<const double> xi) const;

  /// Combines per-direction basis evaluations (values and first derivatives,
  /// one per direction, first dim() entries used) into the mapped point.
  /// Does not check det J.
  MappedPoint map_from_basis(const std::array<const BasisValues*, 3>& basis) const;

 private:
  std::vector<KnotVector> knots_;
  std::vector<Point> points_;
  std::vector<double> weights_;
  bool polynomial_;
};

/// Identity map of [0,1]^d with degree-1 splines.
NurbsPatch unit_hypercube(int d);

/// Exact quarter annulus: direction 1 radial, direction 2 angular
/// (quadratic arc), direction 3 (d = 3) an extrusion of the given height.
NurbsPatch quarter_annulus(int d, double r_in, double r_out, double height = 1.0);

/// Inverse-transpose of the leading d x d block and its determinant.
Matrix3 inverse_transpose(const Matrix3& a, int d, double& det);

std::string patch_to_json(const NurbsPatch& patch);
NurbsPatch patch_from_json(const std::string& text);
void write_patch(const NurbsPatch& patch, const std::filesystem::path& path);
NurbsPatch read_patch(const std::filesystem::path& path);

}  // namespace sgiga
