#include "sgiga/grid.hpp"

#include <cmath>
#include <string>

#include "sgiga/quadrature.hpp"

namespace sgiga {

QuadratureGrid::QuadratureGrid(const NurbsPatch& patch,
                               const std::vector<std::vector<double>>& breakpoints, int q)
    : dim_(patch.dim()) {
  if (static_cast<int>(breakpoints.size()) != dim_)
    throw std::invalid_argument("QuadratureGrid: one breakpoint list per direction required");

  std::array<std::vector<double>, 3> w1d;
  std::array<std::vector<BasisValues>, 3> geo;
  for (int l = 0; l < 3; ++l) {
    if (l < dim_) {
      GaussRule rule = composite_rule(breakpoints[l], q);
      nodes_[l] = std::move(rule.nodes);
      w1d[l] = std::move(rule.weights);
      for (double xi : nodes_[l]) geo[l].push_back(eval_basis(patch.knots()[l], xi, 1));
    } else {
      nodes_[l] = {0.0};
      w1d[l] = {1.0};
    }
    counts_[l] = static_cast<int>(nodes_[l].size());
  }

  const std::size_t n = static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2];
  const auto dd = static_cast<std::size_t>(dim_ * dim_);
  x_.resize(n);
  weight_.resize(n);
  jit_.resize(n * dd);
  if (!patch.is_polynomial()) {
    w_.resize(n);
    dw_.resize(n * static_cast<std::size_t>(dim_));
  }
  std::size_t idx = 0;
  for (int k = 0; k < counts_[2]; ++k) {
    for (int j = 0; j < counts_[1]; ++j) {
      for (int i = 0; i < counts_[0]; ++i, ++idx) {
        const std::array<int, 3> ijk{i, j, k};
        std::array<const BasisValues*, 3> basis{nullptr, nullptr, nullptr};
        double w = 1.0;
        for (int l = 0; l < dim_; ++l) {
          basis[l] = &geo[l][static_cast<std::size_t>(ijk[l])];
          w *= w1d[l][static_cast<std::size_t>(ijk[l])];
        }
        const MappedPoint mp = patch.map_from_basis(basis);
        if (!(mp.det > 0.0))
          throw GeometryError("QuadratureGrid: non-positive Jacobian determinant " +
                              std::to_string(mp.det));
        double det = 0.0;
        const Matrix3 jit = inverse_transpose(mp.jacobian, dim_, det);
        x_[idx] = mp.x;
        weight_[idx] = w * std::abs(det);
        if (!w_.empty()) {
          w_[idx] = mp.weight;
          for (int a = 0; a < dim_; ++a)
            dw_[idx * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(a)] =
                mp.weight_gradient[a];
        }
        for (int a = 0; a < dim_; ++a)
          for (int b = 0; b < dim_; ++b) jit_[idx * dd + static_cast<std::size_t>(a * dim_ + b)] = jit[a][b];
      }
    }
  }
}

QuadratureGrid QuadratureGrid::dyadic(const NurbsPatch& patch, const std::vector<int>& levels,
                                      double gamma, int q) {
  std::vector<std::vector<double>> bps;
  for (int level : levels) bps.push_back(dyadic_breakpoints(level, gamma));
  return QuadratureGrid(patch, bps, q);
}

FieldSample FieldSample::zeros(const QuadratureGrid& grid, bool with_gradient) {
  FieldSample s;
  s.dim = grid.dim();
  s.value.assign(grid.size(), 0.0);
  if (with_gradient) s.gradient.assign(grid.size() * static_cast<std::size_t>(grid.dim()), 0.0);
  return s;
}

FieldSample sample_function(const QuadratureGrid& grid, const ScalarField& u,
                            const VectorField& grad) {
  FieldSample s = FieldSample::zeros(grid, static_cast<bool>(grad));
  const auto d = static_cast<std::size_t>(grid.dim());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s.value[i] = u(grid.physical(i));
    if (grad) {
      const Point g = grad(grid.physical(i));
      for (std::size_t m = 0; m < d; ++m) s.gradient[i * d + m] = g[m];
    }
  }
  return s;
}

void accumulate_spline(const QuadratureGrid& grid, const DiscreteSpace& space,
                       const Eigen::VectorXd& coefficients, double scale, FieldSample& out) {
  const int d = grid.dim();
  if (space.dim() != d) throw std::invalid_argument("accumulate_spline: dimension mismatch");
  if (static_cast<std::size_t>(coefficients.size()) != space.size())
    throw std::invalid_argument("accumulate_spline: coefficient vector length mismatch");
  const bool with_grad = !out.gradient.empty();
  const bool rational = space.rational() && grid.has_weight();

  // Per-direction basis tables at the 1D grid nodes.
  std::array<int, 3> nloc{1, 1, 1};
  std::array<std::vector<int>, 3> first;
  std::array<std::vector<double>, 3> val;
  std::array<std::vector<double>, 3> der;
  BasisValues bv;
  for (int l = 0; l < 3; ++l) {
    if (l < d) {
      const KnotVector& kv = space.directions()[l];
      nloc[l] = kv.degree() + 1;
      for (double xi : grid.nodes(l)) {
        eval_basis(kv, xi, 1, bv);
        first[l].push_back(bv.first);
        val[l].insert(val[l].end(), bv.values.begin(), bv.values.end());
        der[l].insert(der[l].end(), bv.derivatives.begin(), bv.derivatives.end());
      }
    } else {
      first[l] = {0};
      val[l] = {1.0};
      der[l] = {0.0};
    }
  }

  const auto& counts = grid.counts();
  const auto& shape = space.shape();
  const auto dd = static_cast<std::size_t>(d);
  const double* coef = coefficients.data();
  std::size_t idx = 0;
  for (int k = 0; k < counts[2]; ++k) {
    const double* N2 = &val[2][static_cast<std::size_t>(k * nloc[2])];
    const double* D2 = &der[2][static_cast<std::size_t>(k * nloc[2])];
    for (int j = 0; j < counts[1]; ++j) {
      const double* N1 = &val[1][static_cast<std::size_t>(j * nloc[1])];
      const double* D1 = &der[1][static_cast<std::size_t>(j * nloc[1])];
      for (int i = 0; i < counts[0]; ++i, ++idx) {
        const double* N0 = &val[0][static_cast<std::size_t>(i * nloc[0])];
        const double* D0 = &der[0][static_cast<std::size_t>(i * nloc[0])];
        double v = 0.0;
        double g[3] = {0.0, 0.0, 0.0};
        for (int c = 0; c < nloc[2]; ++c) {
          const std::size_t gz = static_cast<std::size_t>(first[2][static_cast<std::size_t>(k)] + c);
          for (int b = 0; b < nloc[1]; ++b) {
            const std::size_t gy = static_cast<std::size_t>(first[1][static_cast<std::size_t>(j)] + b);
            const std::size_t base =
                static_cast<std::size_t>(shape[0]) * (gy + static_cast<std::size_t>(shape[1]) * gz) +
                static_cast<std::size_t>(first[0][static_cast<std::size_t>(i)]);
            double sv = 0.0;
            double sd = 0.0;
            for (int a = 0; a < nloc[0]; ++a) {
              const double cf = coef[base + static_cast<std::size_t>(a)];
              sv += cf * N0[a];
              sd += cf * D0[a];
            }
            v += sv * N1[b] * N2[c];
            if (with_grad) {
              g[0] += sd * N1[b] * N2[c];
              g[1] += sv * D1[b] * N2[c];
              g[2] += sv * N1[b] * D2[c];
            }
          }
        }
        if (rational) {
          const double inv_w = 1.0 / grid.geometry_weight(idx);
          const double* dw = grid.geometry_weight_gradient(idx);
          v *= inv_w;
          for (int m = 0; m < d; ++m) g[m] = (g[m] - v * dw[m]) * inv_w;
        }
        out.value[idx] += scale * v;
        if (with_grad) {
          const double* jit = grid.inverse_jacobian_t(idx);
          for (std::size_t m = 0; m < dd; ++m) {
            double s = 0.0;
            for (std::size_t n = 0; n < dd; ++n) s += jit[m * dd + n] * g[n];
            out.gradient[idx * dd + m] += scale * s;
          }
        }
      }
    }
  }
}

double l2_norm(const QuadratureGrid& grid, const FieldSample& sample) {
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weight(i) * sample.value[i] * sample.value[i];
  return std::sqrt(s);
}

}  // namespace sgiga
