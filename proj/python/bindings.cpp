#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgiga/analysis.hpp"
#include "sgiga/benchmarks.hpp"
#include "sgiga/combination.hpp"
#include "sgiga/geometry.hpp"
#include "sgiga/quadrature.hpp"
#include "sgiga/scheduler.hpp"
#include "sgiga/splines.hpp"

namespace py = pybind11;
using namespace sgiga;

namespace {

py::tuple to_tuple(const MultiIndex& m) { return py::cast(m.levels()); }

MultiIndex from_sequence(const std::vector<int>& v) { return MultiIndex(v); }

py::dict plan_to_dict(const CombinationPlan& plan) {
  py::dict out;
  for (const auto& t : plan.terms) out[to_tuple(t.index)] = t.coefficient;
  return out;
}

CombinationPlan plan_from_dict(const py::dict& terms) {
  CombinationPlan plan;
  for (auto item : terms) {
    auto idx = from_sequence(item.first.cast<std::vector<int>>());
    plan.dim = idx.dim();
    plan.terms.push_back({idx, item.second.cast<int>()});
  }
  std::sort(plan.terms.begin(), plan.terms.end(),
            [](const PlanTerm& a, const PlanTerm& b) { return a.index < b.index; });
  return plan;
}

py::dict record_to_dict(const ConvergenceRecord& r) {
  py::dict d;
  d["method"] = to_string(r.method);
  d["d"] = r.d;
  d["p"] = r.p;
  d["r"] = r.r;
  d["gamma"] = r.gamma;
  d["J"] = r.J;
  d["h"] = r.h;
  d["n_components"] = r.n_components;
  d["dofs_total"] = r.dofs_total;
  d["dofs_max_component"] = r.dofs_max_component;
  d["l2_error"] = r.l2_error;
  d["h1_semi_error"] = r.h1_semi_error;
  d["time_serial_s"] = r.time_serial;
  py::dict cores;
  for (const auto& [c, t] : r.time_cores) cores[py::int_(c)] = t;
  d["time_cores_s"] = cores;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse-grid isogeometric Poisson solver";

  py::class_<KnotVector>(m, "KnotVector")
      .def(py::init<int, std::vector<double>>(), py::arg("degree"), py::arg("knots"))
      .def_property_readonly("degree", &KnotVector::degree)
      .def_property_readonly("knots",
                             [](const KnotVector& k) {
                               return std::vector<double>(k.knots().begin(), k.knots().end());
                             })
      .def_property_readonly("breakpoints", &KnotVector::breakpoints)
      .def_property_readonly("multiplicities", &KnotVector::multiplicities)
      .def_property_readonly("num_elements", &KnotVector::num_elements)
      .def("__len__", &KnotVector::size);

  m.def("make_open_knot_vector",
        [](int p, const std::vector<double>& z, int r) { return make_open_knot_vector(p, z, r); },
        py::arg("degree"), py::arg("breakpoints"), py::arg("regularity"));
  m.def("dyadic_level_knots", &dyadic_level_knots, py::arg("level"), py::arg("degree"),
        py::arg("regularity"), py::arg("gamma") = 1.0);
  m.def("grade_point", &grade_point, py::arg("t"), py::arg("gamma"));
  m.def(
      "eval_basis",
      [](const KnotVector& kv, double xi, int max_deriv) {
        const auto b = eval_basis(kv, xi, max_deriv);
        return py::make_tuple(b.first, b.values, b.derivatives);
      },
      py::arg("knots"), py::arg("xi"), py::arg("max_deriv") = 0,
      "Returns (first_index, values, derivatives) of the active basis functions.");
  m.def(
      "gauss_rule",
      [](int q) {
        const auto r = gauss_rule(q);
        return py::make_tuple(r.nodes, r.weights);
      },
      py::arg("q"));

  py::class_<NurbsPatch, std::shared_ptr<NurbsPatch>>(m, "NurbsPatch")
      .def_property_readonly("dim", &NurbsPatch::dim)
      .def_property_readonly("weights", &NurbsPatch::weights)
      .def_property_readonly("is_polynomial", &NurbsPatch::is_polynomial)
      .def(
          "map_point",
          [](const NurbsPatch& p, const std::vector<double>& xi) {
            const auto mp = p.map_point(xi);
            const auto d = static_cast<std::size_t>(p.dim());
            std::vector<double> x(mp.x.begin(), mp.x.begin() + static_cast<long>(d));
            std::vector<std::vector<double>> jac(d, std::vector<double>(d));
            for (std::size_t i = 0; i < d; ++i)
              for (std::size_t k = 0; k < d; ++k) jac[i][k] = mp.jacobian[i][k];
            return py::make_tuple(x, jac, mp.det);
          },
          py::arg("xi"))
      .def("to_json", &patch_to_json);
  m.def("unit_hypercube", [](int d) { return std::make_shared<NurbsPatch>(unit_hypercube(d)); });
  m.def(
      "quarter_annulus",
      [](int d, double r_in, double r_out, double height) {
        return std::make_shared<NurbsPatch>(quarter_annulus(d, r_in, r_out, height));
      },
      py::arg("d"), py::arg("r_in") = 1.0, py::arg("r_out") = 2.0, py::arg("height") = 1.0);

  m.def("simplex_set", [](int d, int J) {
    py::list out;
    for (const auto& b : simplex_set(d, J)) out.append(to_tuple(b));
    return out;
  });
  m.def("combination_coefficients",
        [](int d, int J) { return plan_to_dict(combination_coefficients(d, J)); });
  m.def("general_coefficients", [](const std::vector<std::vector<int>>& set) {
    std::vector<MultiIndex> idx;
    for (const auto& v : set) idx.push_back(from_sequence(v));
    return plan_to_dict(general_coefficients(idx));
  });
  m.def(
      "dantzig_select",
      [](const std::vector<std::tuple<std::vector<int>, double, double>>& items, double budget) {
        std::vector<KnapsackItem> ks;
        for (const auto& [idx, rev, cost] : items) ks.push_back({from_sequence(idx), rev, cost});
        const auto sel = dantzig_select(ks, budget);
        py::list chosen;
        for (const auto& b : sel.selected) chosen.append(to_tuple(b));
        return py::make_tuple(chosen, sel.revenue, sel.cost);
      },
      py::arg("items"), py::arg("budget"));
  m.def("optimized_makespan",
        [](const std::vector<double>& times, int cores) { return optimized_makespan(times, cores); },
        py::arg("times"), py::arg("cores"));
  m.def(
      "fit_rate",
      [](const std::vector<int>& levels, const std::vector<double>& errors) {
        const auto f = fit_rate(levels, errors);
        return py::make_tuple(f.slope, f.step_rates);
      },
      py::arg("levels"), py::arg("errors"));

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readwrite("degree", &Problem::degree)
      .def_readwrite("regularity", &Problem::regularity)
      .def_readwrite("gamma", &Problem::gamma)
      .def_readwrite("rational_basis", &Problem::rational_basis)
      .def_readwrite("quad_points", &Problem::quad_points)
      .def_property_readonly("dim", &Problem::dim)
      .def_property_readonly("has_exact", &Problem::has_exact)
      .def("exact", [](const Problem& p, const std::vector<double>& x) {
        Point pt{};
        std::copy(x.begin(), x.end(), pt.begin());
        return p.exact(pt);
      })
      .def("forcing", [](const Problem& p, const std::vector<double>& x) {
        Point pt{};
        std::copy(x.begin(), x.end(), pt.begin());
        return p.forcing(pt);
      });
  m.def("regular_annulus_problem",
        [](int d, int p, int r, double g) { return regular_annulus_problem(d, p, r, g); },
        py::arg("d"), py::arg("degree") = 2, py::arg("regularity") = 1, py::arg("gamma") = 1.0);
  m.def("constant_forcing_problem",
        [](int d, int p, int r, double g) { return constant_forcing_problem(d, p, r, g); },
        py::arg("d"), py::arg("degree") = 2, py::arg("regularity") = 1, py::arg("gamma") = 1.0);
  m.def("polynomial_cube_problem", &polynomial_cube_problem, py::arg("d"), py::arg("degree") = 2,
        py::arg("regularity") = 1, py::arg("gamma") = 1.0);

  py::class_<ComponentSolution>(m, "ComponentSolution")
      .def_property_readonly("index", [](const ComponentSolution& c) { return to_tuple(c.index); })
      .def_readonly("dofs", &ComponentSolution::dofs)
      .def_readonly("seconds", &ComponentSolution::seconds)
      .def_readonly("coefficients", &ComponentSolution::coefficients)
      .def("value", [](const ComponentSolution& c, const std::vector<double>& xi) {
        return c.value(xi, nullptr);
      });
  m.def(
      "solve_component",
      [](const Problem& p, const std::vector<int>& beta) {
        return solve_component(p, from_sequence(beta));
      },
      py::arg("problem"), py::arg("beta"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "solve_plan",
      [](const Problem& p, const py::dict& plan, int workers) {
        const auto cp = plan_from_dict(plan);
        py::gil_scoped_release release;
        return run_plan(cp, p, workers).components;
      },
      py::arg("problem"), py::arg("plan"), py::arg("workers") = 1);
  m.def(
      "evaluate_combined",
      [](const py::dict& plan, const std::vector<ComponentSolution>& comps,
         const std::vector<std::vector<double>>& points) {
        std::vector<Point> pts;
        for (const auto& v : points) {
          Point p{};
          std::copy(v.begin(), v.end(), p.begin());
          pts.push_back(p);
        }
        return evaluate_combined(plan_from_dict(plan), comps, pts, false).values;
      },
      py::arg("plan"), py::arg("components"), py::arg("points"));
  m.def(
      "surplus_norm",
      [](const Problem& p, const std::vector<int>& beta) {
        const auto s = surplus_norm(p, from_sequence(beta));
        return py::make_tuple(s.l2, s.dofs);
      },
      py::arg("problem"), py::arg("beta"));

  m.def(
      "convergence_study",
      [](const Problem& p, const std::string& method, const std::vector<int>& levels,
         const std::vector<int>& cores, int workers, int reference_level, int error_quad_points) {
        StudyOptions opts;
        opts.error_quad_points = error_quad_points;
        opts.cores = cores;
        opts.workers = workers;
        std::vector<ConvergenceRecord> recs;
        {
          py::gil_scoped_release release;
          std::optional<ReferenceSolution> ref;
          if (reference_level > 0 && !p.has_exact()) {
            ref = compute_reference(p, reference_level);
            opts.reference = &*ref;
          }
          recs = convergence_study(p, parse_method(method), levels, opts);
        }
        py::list out;
        for (const auto& r : recs) out.append(record_to_dict(r));
        return out;
      },
      py::arg("problem"), py::arg("method"), py::arg("levels"), py::arg("cores") = std::vector<int>{1},
      py::arg("workers") = 1, py::arg("reference_level") = 0, py::arg("error_quad_points") = 0,
      "Per-level records; reference_level > 0 overrides the overkill reference level.");
  m.def(
      "profit_table",
      [](const Problem& p, int bound, int workers) {
        std::vector<ProfitRow> rows;
        {
          py::gil_scoped_release release;
          rows = profit_table(p, bound, workers);
        }
        py::list out;
        for (const auto& r : rows) out.append(py::make_tuple(to_tuple(r.index), r.surplus_l2, r.dofs, r.profit));
        return out;
      },
      py::arg("problem"), py::arg("bound"), py::arg("workers") = 1);
}
