#pragma once

#include <functional>
#include <memory>
#include <string>

#include "sgiga/assembly.hpp"
#include "sgiga/geometry.hpp"

namespace sgiga {

using VectorField = std::function<Point(const Point&)>;

/// Poisson problem with homogeneous Dirichlet data plus the discretization
/// recipe (degree, continuity, grading) shared by every tensor component.
struct Problem {
  std::string name;
  std::shared_ptr<const NurbsPatch> geometry;
  ScalarField forcing;
  /// Optional analytic solution and its physical gradient.
  ScalarField exact;
  VectorField exact_gradient;

  int degree = 2;
  int regularity = 1;
  double gamma = 1.0;
  /// Analysis basis N_i / W with the geometry weight W (NURBS) instead of
  /// plain B-splines; identical for polynomial patches.
  bool rational_basis = true;
  /// Assembly Gauss points per direction; 0 selects degree + 2.
  int quad_points = 0;

  int dim() const { return geometry->dim(); }
  bool has_exact() const { return static_cast<bool>(exact); }
};

}  // namespace sgiga
