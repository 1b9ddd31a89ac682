#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sgiga/analysis.hpp"
#include "sgiga/benchmarks.hpp"
#include "sgiga/quadrature.hpp"

using namespace sgiga;

namespace {

double fd_laplacian(const ScalarField& u, const Point& x, int d, double h) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    Point p = x, m = x;
    p[k] += h;
    m[k] -= h;
    s += (u(p) - 2.0 * u(x) + u(m)) / (h * h);
  }
  return s;
}

Point random_annulus_point(std::mt19937& rng, int d) {
  std::uniform_real_distribution<double> r(1.05, 1.95), t(0.05, std::numbers::pi / 2 - 0.05),
      z(0.05, 0.95);
  const double rr = r(rng), tt = t(rng);
  return {rr * std::cos(tt), rr * std::sin(tt), d == 3 ? z(rng) : 0.0};
}

// Integrates g over the planar quarter annulus in polar coordinates.
template <typename G>
double polar_integral(G g) {
  const GaussRule rule = composite_rule(dyadic_breakpoints(3, 1.0), 10);
  const double half_pi = std::numbers::pi / 2;
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double r = 1.0 + rule.nodes[i];
      const double th = half_pi * rule.nodes[j];
      s += rule.weights[i] * rule.weights[j] * half_pi * r * g(Point{r * std::cos(th), r * std::sin(th), 0.0});
    }
  return s;
}

double rel_change(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("regular annulus problem values") {
  const Problem pb = regular_annulus_problem(2);
  CHECK(pb.exact(Point{1.5, 0.0, 0.0}) == 0.0);
  const double c = 1.5 / std::sqrt(2.0);
  CHECK(std::abs(pb.exact(Point{c, c, 0.0}) - 2.61018) <= 1e-4);
  const double s = 2.25;
  CHECK(pb.exact(Point{c, c, 0.0}) == doctest::Approx(-(s - 1) * (s - 4) * c * c * c).epsilon(1e-14));
  const Problem pb3 = regular_annulus_problem(3);
  CHECK(pb3.exact(Point{c, c, 0.5}) == doctest::Approx(pb.exact(Point{c, c, 0.0})).epsilon(1e-14));
  CHECK_THROWS_AS(regular_annulus_problem(4), std::invalid_argument);

  const Problem cf = constant_forcing_problem(2, 3, 2, 3.0);
  CHECK_FALSE(cf.has_exact());
  CHECK(cf.forcing(Point{1.2, 0.7, 0.0}) == 1.0);
  CHECK(cf.gamma == 3.0);
}

TEST_CASE("closed-form forcing matches a finite-difference Laplacian") {
  std::mt19937 rng(59);
  for (int d : {2, 3}) {
    const Problem pb = regular_annulus_problem(d);
    for (int i = 0; i < 100; ++i) {
      const Point x = random_annulus_point(rng, d);
      CHECK(std::abs(pb.forcing(x) + fd_laplacian(pb.exact, x, d, 1e-4)) <= 1e-5);
    }
  }
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937 rng(61);
  const double h = 1e-6;
  for (int d : {2, 3}) {
    for (const Problem& pb : {regular_annulus_problem(d), polynomial_cube_problem(d)}) {
      for (int i = 0; i < 100; ++i) {
        const Point x = pb.name == "regular" ? random_annulus_point(rng, d)
                                             : Point{0.3 + 0.01 * i / 3, 0.7 - 0.005 * i, 0.4};
        const Point g = pb.exact_gradient(x);
        for (int k = 0; k < d; ++k) {
          Point p = x, m = x;
          p[k] += h;
          m[k] -= h;
          CHECK(std::abs(g[k] - (pb.exact(p) - pb.exact(m)) / (2 * h)) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("analytic solutions vanish on the boundary") {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {2, 3}) {
    const Problem pb = regular_annulus_problem(d);
    for (int i = 0; i < 200; ++i) {
      const int face = i % (2 * d);
      std::vector<double> xi{u(rng), u(rng), u(rng)};
      xi[static_cast<std::size_t>(face / 2)] = face % 2;
      xi.resize(static_cast<std::size_t>(d));
      const Point x = pb.geometry->map_point(xi).x;
      CHECK(std::abs(pb.exact(x)) <= 1e-10);
    }
  }
}

TEST_CASE("error_norms") {
  const Problem pb = regular_annulus_problem(2);
  const QuadratureGrid grid = QuadratureGrid::dyadic(*pb.geometry, {3, 3}, 1.0, 6);
  const FieldSample ex = sample_function(grid, pb.exact, pb.exact_gradient);
  const ErrorNorms same = error_norms(grid, ex, ex);
  CHECK(same.l2 <= 1e-14);
  CHECK(same.h1_semi <= 1e-14);

  const ErrorNorms zero = error_norms(grid, FieldSample::zeros(grid, true), ex);
  const double l2 = std::sqrt(polar_integral([&](const Point& x) { return std::pow(pb.exact(x), 2); }));
  const double h1 = std::sqrt(polar_integral([&](const Point& x) {
    const Point g = pb.exact_gradient(x);
    return g[0] * g[0] + g[1] * g[1];
  }));
  CHECK(zero.l2 == doctest::Approx(l2).epsilon(1e-10));
  CHECK(zero.h1_semi == doctest::Approx(h1).epsilon(1e-10));
}

TEST_CASE("fit_rate examples") {
  const std::vector<int> J{2, 3, 4, 5, 6};
  std::vector<double> e;
  for (int j : J) e.push_back(7.0 * std::pow(2.0, -2.0 * j));
  const RateFit exact = fit_rate(J, e);
  CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-12));
  for (double s : exact.step_rates) CHECK(s == doctest::Approx(2.0).epsilon(1e-12));

  // log2 e = -3J + log2(J)/2, so the slope is 3 minus half the fitted slope
  // of log2 J against J.
  e.clear();
  for (int j : J) e.push_back(std::pow(2.0, -3.0 * j) * std::sqrt(static_cast<double>(j)));
  double mj = 0.0, ml = 0.0;
  for (int j : J) {
    mj += j / 5.0;
    ml += std::log2(static_cast<double>(j)) / 5.0;
  }
  double num = 0.0, den = 0.0;
  for (int j : J) {
    num += (j - mj) * (std::log2(static_cast<double>(j)) - ml);
    den += (j - mj) * (j - mj);
  }
  const double expected = 3.0 - 0.5 * num / den;
  CHECK(fit_rate(J, e).slope == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected < 3.0);

  const std::vector<double> flat(5, 0.3);
  CHECK(std::abs(fit_rate(J, flat).slope) <= 1e-14);

  const std::vector<double> bad{1.0, 0.0, 0.5, 0.2, 0.1};
  CHECK_THROWS_AS(fit_rate(J, bad), std::invalid_argument);
  const std::vector<int> two{2, 3};
  const std::vector<double> two_e{1.0, 0.5};
  CHECK_THROWS_AS(fit_rate(two, two_e), std::invalid_argument);
}

TEST_CASE("convergence_study counts and dofs") {
  const Problem pb = polynomial_cube_problem(2, 2, 1);
  const std::vector<int> levels{1, 2, 3, 4, 5, 6, 7};
  StudyOptions opts;
  opts.cores = {1, 2, 4};
  const auto sparse = convergence_study(pb, Method::sparse, levels, opts);
  const auto tensor = convergence_study(pb, Method::tensor, levels, opts);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int J = levels[i];
    CHECK(sparse[i].n_components == static_cast<std::size_t>(2 * J + 1));
    CHECK(tensor[i].n_components == 1);
    CHECK(tensor[i].dofs_total == static_cast<std::size_t>(((1 << J) + 2) * ((1 << J) + 2)));
    CHECK(sparse[i].h == std::ldexp(1.0, -J));
    CHECK(sparse[i].time_cores.size() == 3);
    CHECK(tensor[i].time_cores[1].second == tensor[i].time_serial);
    // The polynomial solution is reproduced by every component.
    CHECK(sparse[i].l2_error <= 1e-10);
  }
  for (std::size_t i = 3; i < levels.size(); ++i) {
    const double prev = static_cast<double>(sparse[i - 1].dofs_total) / static_cast<double>(tensor[i - 1].dofs_total);
    const double cur = static_cast<double>(sparse[i].dofs_total) / static_cast<double>(tensor[i].dofs_total);
    CHECK(cur < prev);
  }
  CHECK_THROWS_AS(convergence_study(pb, Method::sparse, std::vector<int>{3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_study(pb, Method::sparse, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("errors decrease monotonically on the regular problem") {
  const Problem pb = regular_annulus_problem(2, 2, 1);
  const std::vector<int> levels{1, 2, 3, 4, 5};
  for (Method m : {Method::sparse, Method::tensor}) {
    const auto recs = convergence_study(pb, m, levels);
    for (std::size_t i = 1; i < recs.size(); ++i) {
      CHECK(recs[i].l2_error < recs[i - 1].l2_error);
      CHECK(recs[i].h1_semi_error < recs[i - 1].h1_semi_error);
    }
  }
}

TEST_CASE("overkill reference is stable") {
  const std::vector<int> levels{2, 3, 4};
  for (double gamma : {1.0, 3.0}) {
    const Problem pb = constant_forcing_problem(2, 3, 2, gamma);
    const ReferenceSolution r6 = compute_reference(pb, 6);
    const ReferenceSolution r7 = compute_reference(pb, 7);
    for (Method m : {Method::sparse, Method::tensor}) {
      StudyOptions a, b;
      a.reference = &r6;
      b.reference = &r7;
      const auto ea = convergence_study(pb, m, levels, a);
      const auto eb = convergence_study(pb, m, levels, b);
      for (std::size_t i = 0; i < levels.size(); ++i) {
        CHECK(rel_change(ea[i].l2_error, eb[i].l2_error) < 0.01);
        CHECK(rel_change(ea[i].h1_semi_error, eb[i].h1_semi_error) < 0.01);
      }
    }
    StudyOptions low;
    low.reference = &r6;
    CHECK_THROWS_AS(convergence_study(pb, Method::sparse, std::vector<int>{7}, low), std::invalid_argument);
  }
}

TEST_CASE("quadrature sufficiency") {
  struct Case {
    Problem pb;
    std::vector<int> levels;
  };
  std::vector<Case> cases{{regular_annulus_problem(2, 2, 1), {2, 3, 4}},
                          {regular_annulus_problem(2, 3, 2), {2, 3, 4}},
                          {regular_annulus_problem(3, 2, 1), {2, 3}},
                          {constant_forcing_problem(2, 3, 2, 1.0), {2, 3, 4}},
                          {constant_forcing_problem(2, 3, 2, 3.0), {2, 3, 4}}};
  for (auto& c : cases) {
    for (Method m : {Method::sparse, Method::tensor}) {
      const int qa = c.pb.degree + 2;
      const int qe = c.pb.has_exact() ? c.pb.degree + 3 : c.pb.degree + 1;
      const auto base = convergence_study(c.pb, m, c.levels);
      Problem fine = c.pb;
      fine.quad_points = 2 * qa;
      StudyOptions opts;
      // The rule table stops at 10 points.
      opts.error_quad_points = std::min(2 * qe, 10);
      const auto doubled = convergence_study(fine, m, c.levels, opts);
      for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(rel_change(base[i].l2_error, doubled[i].l2_error) < 1e-3);
    }
  }
}

TEST_CASE("convergence and profit CSV round trips") {
  const Problem pb = regular_annulus_problem(2, 2, 1);
  StudyOptions opts;
  opts.cores = {1, 3};
  const auto recs = convergence_study(pb, Method::sparse, std::vector<int>{1, 2, 3}, opts);
  const std::string text = convergence_csv(recs);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.starts_with("method,d,p,r,gamma,J,h,n_components,dofs_total,dofs_max_component,"
                         "l2_error,h1_semi_error,time_serial_s,time_cores_1_s,time_cores_3_s\n"));
  CHECK(parse_convergence_csv(text) == recs);

  const auto rows = profit_table(pb, 2, 2);
  CHECK(rows.size() == 9);
  for (const auto& r : rows) {
    CHECK(r.profit == r.surplus_l2 / static_cast<double>(r.dofs));
    CHECK(r.dofs == static_cast<std::size_t>(((1 << r.index[0]) + 2) * ((1 << r.index[1]) + 2)));
  }
  CHECK(parse_profit_csv(profit_csv(rows)) == rows);
  CHECK_THROWS_AS(profit_table(pb, -1), std::invalid_argument);
}

TEST_CASE("gamma_sweep") {
  const Problem pb = constant_forcing_problem(2, 2, 1);
  const std::vector<double> gammas{1.0, 2.0};
  const std::vector<Method> methods{Method::sparse, Method::tensor};
  const std::vector<int> levels{2, 3, 4};
  const auto rows = gamma_sweep(pb, gammas, methods, levels);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].gamma == 1.0);
  CHECK(rows[0].method == Method::sparse);
  CHECK(rows[3].gamma == 2.0);
  CHECK(rows[3].method == Method::tensor);
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.l2_rate));
    CHECK(r.l2_rate > 0.0);
  }
  const std::string csv = gamma_sweep_csv(rows);
  CHECK(csv.starts_with("gamma,method,l2_rate,h1_rate\n"));
  CHECK_THROWS_AS(gamma_sweep(pb, std::vector<double>{}, methods, levels), std::invalid_argument);
}

TEST_CASE("method names") {
  CHECK(parse_method("tensor") == Method::tensor);
  CHECK(parse_method("sparse") == Method::sparse);
  CHECK(to_string(Method::sparse) == "sparse");
  CHECK_THROWS_AS(parse_method("full"), std::invalid_argument);
  CHECK(plan_for(Method::tensor, 3, 2).terms == std::vector<PlanTerm>{{MultiIndex{2, 2, 2}, 1}});
}
