#pragma once

#include "sgiga/problem.hpp"

namespace sgiga {

/// Quarter annulus 1 < r < 2 (height 1 in 3D) with the manufactured solution
///   u = -(x^2+y^2-1)(x^2+y^2-4) x y^2            (d = 2)
///   u = -(x^2+y^2-1)(x^2+y^2-4) x y^2 sin(pi z)  (d = 3)
/// and f = -Laplace(u) in closed form.
Problem regular_annulus_problem(int d, int degree = 2, int regularity = 1, double gamma = 1.0,
                                double r_in = 1.0, double r_out = 2.0, double height = 1.0);

/// Quarter annulus with f = 1; the solution has corner (and edge) singularities
/// and no closed form.
Problem constant_forcing_problem(int d, int degree = 2, int regularity = 1, double gamma = 1.0,
                                 double r_in = 1.0, double r_out = 2.0, double height = 1.0);

/// Unit hypercube with u = prod_l x_l (1 - x_l), which lies in every spline
/// space of degree >= 2.
Problem polynomial_cube_problem(int d, int degree = 2, int regularity = 1, double gamma = 1.0);

}  // namespace sgiga
