#include "sgiga/combination.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sgiga/grid.hpp"
#include "sgiga/linsolve.hpp"

namespace sgiga {

MultiIndex::MultiIndex(std::vector<int> levels) : levels_(std::move(levels)) {
  for (int v : levels_)
    if (v < 0) throw std::invalid_argument("MultiIndex: components must be non-negative");
}

int MultiIndex::sum() const { return std::accumulate(levels_.begin(), levels_.end(), 0); }

std::string MultiIndex::to_string() const {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < levels_.size(); ++i) s << (i ? "," : "") << levels_[i];
  s << ')';
  return s.str();
}

bool dominated_by(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) return false;
  for (int l = 0; l < a.dim(); ++l)
    if (a[l] > b[l]) return false;
  return true;
}

int CombinationPlan::coefficient_sum() const {
  int s = 0;
  for (const auto& t : terms) s += t.coefficient;
  return s;
}

std::vector<MultiIndex> CombinationPlan::indices() const {
  std::vector<MultiIndex> out;
  for (const auto& t : terms) out.push_back(t.index);
  return out;
}

namespace {

void enumerate_simplex(int d, int remaining, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == d) {
    out.emplace_back(prefix);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    prefix.push_back(v);
    enumerate_simplex(d, remaining - v, prefix, out);
    prefix.pop_back();
  }
}

void enumerate_box(const MultiIndex& upper, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  const auto l = static_cast<int>(prefix.size());
  if (l == upper.dim()) {
    out.emplace_back(prefix);
    return;
  }
  for (int v = 0; v <= upper[l]; ++v) {
    prefix.push_back(v);
    enumerate_box(upper, prefix, out);
    prefix.pop_back();
  }
}

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<MultiIndex> simplex_set(int d, int J) {
  if (d < 1) throw std::invalid_argument("simplex_set: d must be positive");
  if (J < 0) throw std::invalid_argument("simplex_set: J must be non-negative");
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  enumerate_simplex(d, J, prefix, out);
  return out;
}

std::vector<MultiIndex> box_set(const MultiIndex& upper) {
  std::vector<MultiIndex> out;
  std::vector<int> prefix;
  enumerate_box(upper, prefix, out);
  return out;
}

bool is_downward_closed(std::span<const MultiIndex> set) {
  const std::set<MultiIndex> members(set.begin(), set.end());
  for (const auto& beta : members) {
    std::vector<int> lv = beta.levels();
    for (auto& v : lv) {
      if (v == 0) continue;
      --v;
      if (!members.contains(MultiIndex(lv))) return false;
      ++v;
    }
  }
  return true;
}

CombinationPlan combination_coefficients(int d, int J) {
  CombinationPlan plan;
  plan.dim = d;
  plan.level = J;
  const int lowest = std::max(0, J - d + 1);
  for (auto& beta : simplex_set(d, J)) {
    const int gap = J - beta.sum();
    if (beta.sum() < lowest) continue;
    const int c = (gap % 2 == 0 ? 1 : -1) * binomial(d - 1, gap);
    if (c != 0) plan.terms.push_back({std::move(beta), c});
  }
  return plan;
}

CombinationPlan general_coefficients(std::span<const MultiIndex> set) {
  if (set.empty()) throw std::invalid_argument("general_coefficients: empty index set");
  const int d = set.front().dim();
  for (const auto& beta : set)
    if (beta.dim() != d) throw std::invalid_argument("general_coefficients: mixed dimensions");
  if (!is_downward_closed(set))
    throw std::invalid_argument("general_coefficients: index set is not downward closed");

  const std::set<MultiIndex> members(set.begin(), set.end());
  CombinationPlan plan;
  plan.dim = d;
  for (const auto& beta : members) {
    int c = 0;
    for (int k = 0; k < (1 << d); ++k) {
      std::vector<int> lv = beta.levels();
      int bits = 0;
      for (int l = 0; l < d; ++l)
        if ((k >> l) & 1) {
          ++lv[static_cast<std::size_t>(l)];
          ++bits;
        }
      if (members.contains(MultiIndex(lv))) c += (bits % 2 == 0) ? 1 : -1;
    }
    if (c != 0) plan.terms.push_back({beta, c});
  }
  return plan;
}

double ComponentSolution::value(std::span<const double> xi, Point* parametric_gradient) const {
  const int d = space.dim();
  if (static_cast<int>(xi.size()) < d)
    throw std::invalid_argument("ComponentSolution::value: point has too few coordinates");
  std::array<BasisValues, 3> bv;
  std::array<int, 3> nloc{1, 1, 1};
  for (int l = 0; l < 3; ++l) {
    if (l < d) {
      eval_basis(space.directions()[l], xi[l], 1, bv[l]);
      nloc[l] = static_cast<int>(bv[l].values.size());
    } else {
      bv[l].first = 0;
      bv[l].values = {1.0};
      bv[l].derivatives = {0.0};
    }
  }
  double v = 0.0;
  Point g{};
  for (int c = 0; c < nloc[2]; ++c)
    for (int b = 0; b < nloc[1]; ++b)
      for (int a = 0; a < nloc[0]; ++a) {
        const double cf = coefficients[static_cast<Eigen::Index>(space.global_index(
            {bv[0].first + a, bv[1].first + b, bv[2].first + c}))];
        const double n0 = bv[0].values[a], n1 = bv[1].values[b], n2 = bv[2].values[c];
        v += cf * n0 * n1 * n2;
        g[0] += cf * bv[0].derivatives[a] * n1 * n2;
        g[1] += cf * n0 * bv[1].derivatives[b] * n2;
        g[2] += cf * n0 * n1 * bv[2].derivatives[c];
      }
  if (space.rational() && geometry && !geometry->is_polynomial()) {
    const MappedPoint mp = geometry->map_point(xi.first(static_cast<std::size_t>(d)));
    v /= mp.weight;
    for (int l = 0; l < d; ++l) g[l] = (g[l] - v * mp.weight_gradient[l]) / mp.weight;
  }
  if (parametric_gradient) {
    for (int l = d; l < 3; ++l) g[l] = 0.0;
    *parametric_gradient = g;
  }
  return v;
}

DiscreteSpace component_space(const Problem& problem, const MultiIndex& index) {
  if (index.dim() != problem.dim())
    throw std::invalid_argument("component_space: multi-index dimension differs from geometry");
  std::vector<KnotVector> dirs;
  for (int l = 0; l < index.dim(); ++l)
    dirs.push_back(dyadic_level_knots(index[l], problem.degree, problem.regularity, problem.gamma));
  return DiscreteSpace(std::move(dirs), problem.rational_basis);
}

ComponentSolution solve_component(const Problem& problem, const MultiIndex& index) {
  const auto start = std::chrono::steady_clock::now();
  DiscreteSpace space = component_space(problem, index);
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
  if (space.num_interior() > 0) {
    AssemblyOptions opts;
    opts.quad_points = problem.quad_points > 0 ? problem.quad_points : problem.degree + 2;
    const AssembledSystem sys = assemble_poisson(space, *problem.geometry, problem.forcing, opts);
    const Eigen::VectorXd c = solve_spd(sys.stiffness, sys.load);
    for (std::size_t i = 0; i < sys.dofs.size(); ++i)
      coef[static_cast<Eigen::Index>(sys.dofs[i])] = c[static_cast<Eigen::Index>(i)];
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::size_t dofs = space.size();
  return ComponentSolution{index, std::move(space), std::move(coef), dofs, seconds, problem.geometry};
}

CombinedValues evaluate_combined(const CombinationPlan& plan,
                                 std::span<const ComponentSolution> components,
                                 std::span<const Point> points, bool with_gradient) {
  std::map<MultiIndex, const ComponentSolution*> by_index;
  for (const auto& c : components) by_index[c.index] = &c;
  std::vector<const ComponentSolution*> ordered;
  for (const auto& t : plan.terms) {
    auto it = by_index.find(t.index);
    if (it == by_index.end())
      throw std::invalid_argument("evaluate_combined: missing component " + t.index.to_string());
    ordered.push_back(it->second);
  }

  CombinedValues out;
  out.values.assign(points.size(), 0.0);
  if (with_gradient) out.gradients.assign(points.size(), Point{});
  const auto d = static_cast<std::size_t>(plan.dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::span<const double> xi(points[i].data(), d);
    for (std::size_t t = 0; t < ordered.size(); ++t) {
      const double c = plan.terms[t].coefficient;
      Point g{};
      out.values[i] += c * ordered[t]->value(xi, with_gradient ? &g : nullptr);
      if (with_gradient)
        for (std::size_t l = 0; l < 3; ++l) out.gradients[i][l] += c * g[l];
    }
  }
  return out;
}

SurplusNorm surplus_norm(const Problem& problem, const MultiIndex& index,
                         const ComponentLookup& lookup) {
  const int d = index.dim();
  const int q = problem.degree + 1;
  const QuadratureGrid grid = QuadratureGrid::dyadic(*problem.geometry, index.levels(),
                                                     problem.gamma, q);
  FieldSample delta = FieldSample::zeros(grid, false);
  std::size_t dofs = 0;
  for (int k = 0; k < (1 << d); ++k) {
    std::vector<int> lv = index.levels();
    int bits = 0;
    bool valid = true;
    for (int l = 0; l < d; ++l)
      if ((k >> l) & 1) {
        if (--lv[static_cast<std::size_t>(l)] < 0) valid = false;
        ++bits;
      }
    if (!valid) continue;
    const ComponentSolution& comp = lookup(MultiIndex(lv));
    if (k == 0) dofs = comp.dofs;
    accumulate_spline(grid, comp.space, comp.coefficients, bits % 2 == 0 ? 1.0 : -1.0, delta);
  }
  return {l2_norm(grid, delta), dofs};
}

SurplusNorm surplus_norm(const Problem& problem, const MultiIndex& index) {
  std::map<MultiIndex, ComponentSolution> cache;
  return surplus_norm(problem, index, [&](const MultiIndex& beta) -> const ComponentSolution& {
    auto it = cache.find(beta);
    if (it == cache.end()) it = cache.emplace(beta, solve_component(problem, beta)).first;
    return it->second;
  });
}

KnapsackSelection dantzig_select(std::span<const KnapsackItem> items, double budget) {
  for (const auto& it : items) {
    if (!(it.cost > 0.0)) throw std::invalid_argument("dantzig_select: costs must be positive");
    if (!(it.revenue >= 0.0)) throw std::invalid_argument("dantzig_select: revenues must be non-negative");
  }
  std::vector<const KnapsackItem*> order;
  for (const auto& it : items) order.push_back(&it);
  std::stable_sort(order.begin(), order.end(), [](const KnapsackItem* a, const KnapsackItem* b) {
    const double pa = a->revenue / a->cost;
    const double pb = b->revenue / b->cost;
    if (pa != pb) return pa > pb;
    return a->index < b->index;
  });

  KnapsackSelection sel;
  for (const KnapsackItem* it : order) {
    if (sel.cost + it->cost > budget) break;
    sel.selected.push_back(it->index);
    sel.cost += it->cost;
    sel.revenue += it->revenue;
  }
  return sel;
}

}  // namespace sgiga
