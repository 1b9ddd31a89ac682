#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCore>

#include "sgiga/geometry.hpp"
#include "sgiga/splines.hpp"

namespace sgiga {

using ScalarField = std::function<double(const Point&)>;

/// Raised when a discrete space has no degrees of freedom left after
/// eliminating the Dirichlet boundary.
class EmptySpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor-product spline space on [0,1]^d with homogeneous Dirichlet
/// conditions on every face. Global index runs with direction 1 fastest.
class DiscreteSpace {
 public:
  /// With rational = true the space is span{N_i / W}, W being the weight
  /// function of the geometry the space is used with.
  explicit DiscreteSpace(std::vector<KnotVector> directions, bool rational = false);

  int dim() const { return static_cast<int>(directions_.size()); }
  const std::vector<KnotVector>& directions() const { return directions_; }
  /// Per-direction dimension, padded with 1 beyond dim().
  const std::array<int, 3>& shape() const { return shape_; }
  int max_degree() const;
  bool rational() const { return rational_; }

  std::size_t size() const { return size_; }
  std::size_t num_interior() const { return num_interior_; }

  std::array<int, 3> tensor_index(std::size_t global) const;
  std::size_t global_index(const std::array<int, 3>& idx) const;
  bool is_boundary(std::size_t global) const;

  /// Position of a dof among the interior dofs, or -1 on the boundary.
  std::ptrdiff_t interior_index(std::size_t global) const;
  std::vector<std::size_t> interior_dofs() const;
  std::vector<std::size_t> boundary_dofs() const;

 private:
  std::vector<KnotVector> directions_;
  std::array<int, 3> shape_{1, 1, 1};
  std::size_t size_ = 1;
  std::size_t num_interior_ = 1;
  bool rational_ = false;
};

struct AssembledSystem {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd load;
  /// Global (tensor) dof of every row.
  std::vector<std::size_t> dofs;
};

struct AssemblyOptions {
  /// Gauss points per direction per element; 0 selects max degree + 1.
  int quad_points = 0;
  /// When false the full matrix over all dofs is returned.
  bool eliminate_boundary = true;
};

/// Galerkin stiffness matrix and load vector of -Laplace(u) = f on the
/// mapped domain. f is evaluated at physical points.
///
/// Throws GeometryError if det J <= 0 at a quadrature point and
/// EmptySpaceError if no interior dofs remain.
AssembledSystem assemble_poisson(const DiscreteSpace& space, const NurbsPatch& patch,
                                 const ScalarField& f, const AssemblyOptions& options = {});

}  // namespace sgiga
