#include "sgiga/benchmarks.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace sgiga {

namespace {

constexpr double kPi = std::numbers::pi;

// Planar factor u2 = g(s) x y^2 with s = x^2 + y^2 and g(s) = -(s-1)(s-4).
double planar_u(double x, double y) {
  const double s = x * x + y * y;
  return -(s - 1.0) * (s - 4.0) * x * y * y;
}

void planar_grad(double x, double y, double& ux, double& uy) {
  const double s = x * x + y * y;
  const double g = -(s - 1.0) * (s - 4.0);
  const double dg = 5.0 - 2.0 * s;
  ux = dg * 2.0 * x * x * y * y + g * y * y;
  uy = dg * 2.0 * y * x * y * y + g * 2.0 * x * y;
}

// -Laplace(u2) = -2 x g(s) - x y^2 (80 - 40 s).
double planar_f(double x, double y) {
  const double s = x * x + y * y;
  const double g = -(s - 1.0) * (s - 4.0);
  return -2.0 * x * g - x * y * y * (80.0 - 40.0 * s);
}

}  // namespace

Problem regular_annulus_problem(int d, int degree, int regularity, double gamma, double r_in,
                                double r_out, double height) {
  if (d != 2 && d != 3) throw std::invalid_argument("regular_annulus_problem: d must be 2 or 3");
  if (r_in != 1.0 || r_out != 2.0 || (d == 3 && height != 1.0))
    throw std::invalid_argument(
        "regular_annulus_problem: the manufactured solution needs r_in=1, r_out=2, height=1");
  Problem pb;
  pb.name = "regular";
  pb.geometry = std::make_shared<const NurbsPatch>(quarter_annulus(d, r_in, r_out, height));
  pb.degree = degree;
  pb.regularity = regularity;
  pb.gamma = gamma;
  if (d == 2) {
    pb.exact = [](const Point& p) { return planar_u(p[0], p[1]); };
    pb.exact_gradient = [](const Point& p) {
      Point g{};
      planar_grad(p[0], p[1], g[0], g[1]);
      return g;
    };
    pb.forcing = [](const Point& p) { return planar_f(p[0], p[1]); };
  } else {
    pb.exact = [](const Point& p) { return planar_u(p[0], p[1]) * std::sin(kPi * p[2]); };
    pb.exact_gradient = [](const Point& p) {
      Point g{};
      planar_grad(p[0], p[1], g[0], g[1]);
      const double sz = std::sin(kPi * p[2]);
      g[0] *= sz;
      g[1] *= sz;
      g[2] = kPi * planar_u(p[0], p[1]) * std::cos(kPi * p[2]);
      return g;
    };
    pb.forcing = [](const Point& p) {
      return (planar_f(p[0], p[1]) + kPi * kPi * planar_u(p[0], p[1])) * std::sin(kPi * p[2]);
    };
  }
  return pb;
}

Problem constant_forcing_problem(int d, int degree, int regularity, double gamma, double r_in,
                                 double r_out, double height) {
  if (d != 2 && d != 3) throw std::invalid_argument("constant_forcing_problem: d must be 2 or 3");
  Problem pb;
  pb.name = "constant_forcing";
  pb.geometry = std::make_shared<const NurbsPatch>(quarter_annulus(d, r_in, r_out, height));
  pb.degree = degree;
  pb.regularity = regularity;
  pb.gamma = gamma;
  pb.forcing = [](const Point&) { return 1.0; };
  return pb;
}

Problem polynomial_cube_problem(int d, int degree, int regularity, double gamma) {
  Problem pb;
  pb.name = "polynomial";
  pb.geometry = std::make_shared<const NurbsPatch>(unit_hypercube(d));
  pb.degree = degree;
  pb.regularity = regularity;
  pb.gamma = gamma;
  pb.exact = [d](const Point& p) {
    double u = 1.0;
    for (int l = 0; l < d; ++l) u *= p[l] * (1.0 - p[l]);
    return u;
  };
  pb.exact_gradient = [d](const Point& p) {
    Point g{};
    for (int k = 0; k < d; ++k) {
      double v = 1.0 - 2.0 * p[k];
      for (int l = 0; l < d; ++l)
        if (l != k) v *= p[l] * (1.0 - p[l]);
      g[k] = v;
    }
    return g;
  };
  pb.forcing = [d](const Point& p) {
    double f = 0.0;
    for (int k = 0; k < d; ++k) {
      double v = 2.0;
      for (int l = 0; l < d; ++l)
        if (l != k) v *= p[l] * (1.0 - p[l]);
      f += v;
    }
    return f;
  };
  return pb;
}

}  // namespace sgiga
