#include "sgiga/assembly.hpp"

#include <algorithm>
#include <string>

#include "sgiga/quadrature.hpp"

namespace sgiga {

DiscreteSpace::DiscreteSpace(std::vector<KnotVector> directions, bool rational)
    : directions_(std::move(directions)), rational_(rational) {
  if (directions_.empty() || directions_.size() > 3)
    throw std::invalid_argument("DiscreteSpace: dimension must be 1, 2 or 3");
  for (int l = 0; l < dim(); ++l) {
    shape_[l] = directions_[l].size();
    size_ *= static_cast<std::size_t>(shape_[l]);
    num_interior_ *= static_cast<std::size_t>(std::max(shape_[l] - 2, 0));
  }
}

int DiscreteSpace::max_degree() const {
  int p = 0;
  for (const auto& kv : directions_) p = std::max(p, kv.degree());
  return p;
}

std::array<int, 3> DiscreteSpace::tensor_index(std::size_t global) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int l = 0; l < 3; ++l) {
    idx[l] = static_cast<int>(global % static_cast<std::size_t>(shape_[l]));
    global /= static_cast<std::size_t>(shape_[l]);
  }
  return idx;
}

std::size_t DiscreteSpace::global_index(const std::array<int, 3>& idx) const {
  return static_cast<std::size_t>(idx[0]) +
         static_cast<std::size_t>(shape_[0]) *
             (static_cast<std::size_t>(idx[1]) +
              static_cast<std::size_t>(shape_[1]) * static_cast<std::size_t>(idx[2]));
}

bool DiscreteSpace::is_boundary(std::size_t global) const {
  const auto idx = tensor_index(global);
  for (int l = 0; l < dim(); ++l)
    if (idx[l] == 0 || idx[l] == shape_[l] - 1) return true;
  return false;
}

std::ptrdiff_t DiscreteSpace::interior_index(std::size_t global) const {
  const auto idx = tensor_index(global);
  std::ptrdiff_t r = 0;
  std::ptrdiff_t stride = 1;
  for (int l = 0; l < dim(); ++l) {
    if (idx[l] == 0 || idx[l] == shape_[l] - 1) return -1;
    r += (idx[l] - 1) * stride;
    stride *= shape_[l] - 2;
  }
  return r;
}

std::vector<std::size_t> DiscreteSpace::interior_dofs() const {
  std::vector<std::size_t> out;
  out.reserve(num_interior_);
  for (std::size_t g = 0; g < size_; ++g)
    if (!is_boundary(g)) out.push_back(g);
  return out;
}

std::vector<std::size_t> DiscreteSpace::boundary_dofs() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < size_; ++g)
    if (is_boundary(g)) out.push_back(g);
  return out;
}

namespace {

// Basis values of one direction at every quadrature point, grouped by
// element. Directions beyond the space dimension hold a single constant.
struct DirectionTable {
  int num_elements = 1;
  int num_points = 1;  // per element
  int num_local = 1;
  std::vector<int> first;         // per element
  std::vector<double> weight;     // per (element, point)
  std::vector<double> value;      // per (element, point, local)
  std::vector<double> derivative; // per (element, point, local)
  std::vector<BasisValues> geometry;  // per (element, point)

  DirectionTable() : first{0}, weight{1.0}, value{1.0}, derivative{0.0} {}

  DirectionTable(const KnotVector& kv, const KnotVector& geo, int q) {
    const GaussRule rule = composite_rule(kv.breakpoints(), q);
    num_elements = kv.num_elements();
    num_points = q;
    num_local = kv.degree() + 1;
    first.resize(static_cast<std::size_t>(num_elements));
    weight = rule.weights;
    BasisValues bv;
    for (int e = 0; e < num_elements; ++e) {
      for (int g = 0; g < q; ++g) {
        const std::size_t pt = static_cast<std::size_t>(e * q + g);
        const double xi = rule.nodes[pt];
        eval_basis(kv, xi, 1, bv);
        if (g == 0) first[static_cast<std::size_t>(e)] = bv.first;
        value.insert(value.end(), bv.values.begin(), bv.values.end());
        derivative.insert(derivative.end(), bv.derivatives.begin(), bv.derivatives.end());
        geometry.push_back(eval_basis(geo, xi, 1));
      }
    }
  }

  std::size_t offset(int e, int g) const {
    return static_cast<std::size_t>((e * num_points + g) * num_local);
  }
};

}  // namespace

AssembledSystem assemble_poisson(const DiscreteSpace& space, const NurbsPatch& patch,
                                 const ScalarField& f, const AssemblyOptions& options) {
  const int d = space.dim();
  if (patch.dim() != d)
    throw std::invalid_argument("assemble_poisson: space and patch dimensions differ");
  const int q = options.quad_points > 0 ? options.quad_points : space.max_degree() + 1;
  const bool eliminate = options.eliminate_boundary;

  if (eliminate && space.num_interior() == 0)
    throw EmptySpaceError("assemble_poisson: no interior degrees of freedom (space too coarse)");

  std::array<DirectionTable, 3> tables;
  for (int l = 0; l < d; ++l)
    tables[l] = DirectionTable(space.directions()[l], patch.knots()[l], q);

  // Unknowns form a tensor box: [1, n-1) per direction after elimination.
  const auto& shape = space.shape();
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> box{1, 1, 1};
  std::array<int, 3> band{0, 0, 0};
  for (int l = 0; l < d; ++l) {
    lo[l] = eliminate ? 1 : 0;
    box[l] = eliminate ? shape[l] - 2 : shape[l];
    band[l] = space.directions()[l].degree();
  }
  const Eigen::Index n = static_cast<Eigen::Index>(box[0]) * box[1] * box[2];

  AssembledSystem sys;
  sys.load = Eigen::VectorXd::Zero(n);
  sys.dofs.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < box[2]; ++k)
    for (int j = 0; j < box[1]; ++j)
      for (int i = 0; i < box[0]; ++i)
        sys.dofs[static_cast<std::size_t>(i + box[0] * (j + box[1] * k))] =
            space.global_index({i + lo[0], j + lo[1], k + lo[2]});

  // Sparsity pattern: dofs interact when their supports can share an element.
  Eigen::SparseMatrix<double>& A = sys.stiffness;
  A.resize(n, n);
  {
    Eigen::VectorXi per_col(n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const int i = static_cast<int>(c % box[0]);
      const int j = static_cast<int>((c / box[0]) % box[1]);
      const int k = static_cast<int>(c / (static_cast<Eigen::Index>(box[0]) * box[1]));
      const std::array<int, 3> idx{i, j, k};
      int count = 1;
      for (int l = 0; l < 3; ++l)
        count *= std::min(idx[l] + band[l], box[l] - 1) - std::max(idx[l] - band[l], 0) + 1;
      per_col[c] = count;
    }
    A.reserve(per_col);
    for (Eigen::Index c = 0; c < n; ++c) {
      const int i = static_cast<int>(c % box[0]);
      const int j = static_cast<int>((c / box[0]) % box[1]);
      const int k = static_cast<int>(c / (static_cast<Eigen::Index>(box[0]) * box[1]));
      for (int kk = std::max(k - band[2], 0); kk <= std::min(k + band[2], box[2] - 1); ++kk)
        for (int jj = std::max(j - band[1], 0); jj <= std::min(j + band[1], box[1] - 1); ++jj)
          for (int ii = std::max(i - band[0], 0); ii <= std::min(i + band[0], box[0] - 1); ++ii)
            A.insert(ii + box[0] * (jj + static_cast<Eigen::Index>(box[1]) * kk), c) = 0.0;
    }
    A.makeCompressed();
  }

  const std::array<int, 3> nloc{tables[0].num_local, tables[1].num_local, tables[2].num_local};
  const int nl = nloc[0] * nloc[1] * nloc[2];
  std::vector<double> Kloc(static_cast<std::size_t>(nl * nl));
  std::vector<double> Floc(static_cast<std::size_t>(nl));
  std::vector<double> grad(static_cast<std::size_t>(nl * 3));
  std::vector<double> val(static_cast<std::size_t>(nl));
  std::vector<Eigen::Index> row(static_cast<std::size_t>(nl));

  for (int e2 = 0; e2 < tables[2].num_elements; ++e2) {
    for (int e1 = 0; e1 < tables[1].num_elements; ++e1) {
      for (int e0 = 0; e0 < tables[0].num_elements; ++e0) {
        const std::array<int, 3> el{e0, e1, e2};
        std::fill(Kloc.begin(), Kloc.end(), 0.0);
        std::fill(Floc.begin(), Floc.end(), 0.0);

        for (int c = 0, a = 0; c < nloc[2]; ++c)
          for (int b = 0; b < nloc[1]; ++b)
            for (int i = 0; i < nloc[0]; ++i, ++a) {
              const std::array<int, 3> loc{i, b, c};
              Eigen::Index r = 0;
              Eigen::Index stride = 1;
              bool inside = true;
              for (int l = 0; l < 3; ++l) {
                const int g = tables[l].first[static_cast<std::size_t>(el[l])] + loc[l] - lo[l];
                if (g < 0 || g >= box[l]) inside = false;
                r += g * stride;
                stride *= box[l];
              }
              row[static_cast<std::size_t>(a)] = inside ? r : -1;
            }

        for (int g2 = 0; g2 < tables[2].num_points; ++g2) {
          for (int g1 = 0; g1 < tables[1].num_points; ++g1) {
            for (int g0 = 0; g0 < tables[0].num_points; ++g0) {
              const std::array<int, 3> gp{g0, g1, g2};
              std::array<const BasisValues*, 3> geo{nullptr, nullptr, nullptr};
              double w = 1.0;
              for (int l = 0; l < d; ++l) {
                const auto pt = static_cast<std::size_t>(el[l] * tables[l].num_points + gp[l]);
                geo[l] = &tables[l].geometry[pt];
                w *= tables[l].weight[pt];
              }
              const MappedPoint mp = patch.map_from_basis(geo);
              if (!(mp.det > 0.0))
                throw GeometryError("assemble_poisson: non-positive Jacobian determinant " +
                                    std::to_string(mp.det) + " at a quadrature point");
              double det = 0.0;
              const Matrix3 jit = inverse_transpose(mp.jacobian, d, det);
              const double wdet = w * det;
              const double fx = f(mp.x);
              const bool rat = space.rational() && !patch.is_polynomial();
              const double inv_w = rat ? 1.0 / mp.weight : 1.0;

              const double* N[3];
              const double* dN[3];
              for (int l = 0; l < 3; ++l) {
                const std::size_t off = tables[l].offset(el[l], gp[l]);
                N[l] = tables[l].value.data() + off;
                dN[l] = tables[l].derivative.data() + off;
              }
              for (int c = 0, a = 0; c < nloc[2]; ++c)
                for (int b = 0; b < nloc[1]; ++b)
                  for (int i = 0; i < nloc[0]; ++i, ++a) {
                    double ref[3] = {dN[0][i] * N[1][b] * N[2][c], N[0][i] * dN[1][b] * N[2][c],
                                     N[0][i] * N[1][b] * dN[2][c]};
                    double v = N[0][i] * N[1][b] * N[2][c];
                    if (rat) {
                      // Quotient rule for N / W.
                      v *= inv_w;
                      for (int k = 0; k < d; ++k)
                        ref[k] = (ref[k] - v * mp.weight_gradient[k]) * inv_w;
                    }
                    val[static_cast<std::size_t>(a)] = v;
                    for (int m = 0; m < d; ++m) {
                      double s = 0.0;
                      for (int k = 0; k < d; ++k) s += jit[m][k] * ref[k];
                      grad[static_cast<std::size_t>(a * 3 + m)] = s;
                    }
                  }
              for (int a = 0; a < nl; ++a) {
                const double* ga = &grad[static_cast<std::size_t>(a * 3)];
                Floc[static_cast<std::size_t>(a)] += wdet * fx * val[static_cast<std::size_t>(a)];
                for (int b = a; b < nl; ++b) {
                  const double* gb = &grad[static_cast<std::size_t>(b * 3)];
                  double s = 0.0;
                  for (int m = 0; m < d; ++m) s += ga[m] * gb[m];
                  Kloc[static_cast<std::size_t>(a * nl + b)] += wdet * s;
                }
              }
            }
          }
        }

        for (int a = 0; a < nl; ++a) {
          const Eigen::Index ra = row[static_cast<std::size_t>(a)];
          if (ra < 0) continue;
          sys.load[ra] += Floc[static_cast<std::size_t>(a)];
          for (int b = 0; b < nl; ++b) {
            const Eigen::Index rb = row[static_cast<std::size_t>(b)];
            if (rb < 0) continue;
            const double v = a <= b ? Kloc[static_cast<std::size_t>(a * nl + b)]
                                    : Kloc[static_cast<std::size_t>(b * nl + a)];
            A.coeffRef(ra, rb) += v;
          }
        }
      }
    }
  }
  return sys;
}

}  // namespace sgiga
