#include "sgiga/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sgiga/csv.hpp"

namespace sgiga {

std::string to_string(Method m) { return m == Method::tensor ? "tensor" : "sparse"; }

Method parse_method(const std::string& name) {
  if (name == "tensor") return Method::tensor;
  if (name == "sparse") return Method::sparse;
  throw std::invalid_argument("unknown method '" + name + "' (expected tensor or sparse)");
}

CombinationPlan plan_for(Method method, int d, int J) {
  if (method == Method::sparse) return combination_coefficients(d, J);
  CombinationPlan plan;
  plan.dim = d;
  plan.terms.push_back({MultiIndex(std::vector<int>(static_cast<std::size_t>(d), J)), 1});
  return plan;
}

ErrorNorms error_norms(const QuadratureGrid& grid, const FieldSample& approx,
                       const FieldSample& reference) {
  const auto d = static_cast<std::size_t>(grid.dim());
  const bool grads = !approx.gradient.empty() && !reference.gradient.empty();
  double l2 = 0.0;
  double h1 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weight(i);
    const double e = approx.value[i] - reference.value[i];
    l2 += w * e * e;
    if (grads) {
      for (std::size_t m = 0; m < d; ++m) {
        const double ge = approx.gradient[i * d + m] - reference.gradient[i * d + m];
        h1 += w * ge * ge;
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

FieldSample sample_combined(const QuadratureGrid& grid, const CombinationPlan& plan,
                            std::span<const ComponentSolution> components, bool with_gradient) {
  std::map<MultiIndex, const ComponentSolution*> by_index;
  for (const auto& c : components) by_index[c.index] = &c;
  FieldSample out = FieldSample::zeros(grid, with_gradient);
  for (const auto& t : plan.terms) {
    auto it = by_index.find(t.index);
    if (it == by_index.end())
      throw std::invalid_argument("sample_combined: missing component " + t.index.to_string());
    accumulate_spline(grid, it->second->space, it->second->coefficients, t.coefficient, out);
  }
  return out;
}

RateFit fit_rate(std::span<const int> levels, std::span<const double> errors) {
  if (levels.size() != errors.size())
    throw std::invalid_argument("fit_rate: levels and errors differ in length");
  if (levels.size() < 3) throw std::invalid_argument("fit_rate: need at least three points");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("fit_rate: errors must be positive");

  const auto n = static_cast<double>(levels.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    sx += -static_cast<double>(levels[i]);
    sy += std::log2(errors[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double dx = -static_cast<double>(levels[i]) - mx;
    sxy += dx * (std::log2(errors[i]) - my);
    sxx += dx * dx;
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    fit.step_rates.push_back(std::log2(errors[i] / errors[i + 1]) /
                             static_cast<double>(levels[i + 1] - levels[i]));
  return fit;
}

ReferenceSolution compute_reference(const Problem& problem, int level) {
  const MultiIndex idx(std::vector<int>(static_cast<std::size_t>(problem.dim()), level));
  return ReferenceSolution{level, solve_component(problem, idx)};
}

std::vector<ConvergenceRecord> convergence_study(const Problem& problem, Method method,
                                                 std::span<const int> levels,
                                                 const StudyOptions& options) {
  if (levels.empty()) throw std::invalid_argument("convergence_study: no levels given");
  if (!std::is_sorted(levels.begin(), levels.end()) ||
      std::adjacent_find(levels.begin(), levels.end()) != levels.end())
    throw std::invalid_argument("convergence_study: levels must be strictly increasing");
  const int d = problem.dim();
  const int q = options.error_quad_points > 0  ? options.error_quad_points
                : problem.has_exact()             ? problem.degree + 3
                                                  : problem.degree + 1;

  // Without an analytic solution every level is measured against one overkill
  // reference on its own grid.
  std::optional<ReferenceSolution> own_reference;
  const ReferenceSolution* reference = options.reference;
  std::optional<QuadratureGrid> ref_grid;
  FieldSample ref_sample;
  if (!problem.has_exact()) {
    if (!reference) {
      own_reference = compute_reference(problem, levels.back() + 2);
      reference = &*own_reference;
    }
    if (reference->level < levels.back())
      throw std::invalid_argument("convergence_study: reference level below the finest level");
    ref_grid.emplace(QuadratureGrid::dyadic(
        *problem.geometry, std::vector<int>(static_cast<std::size_t>(d), reference->level),
        problem.gamma, q));
    ref_sample = FieldSample::zeros(*ref_grid, true);
    accumulate_spline(*ref_grid, reference->solution.space, reference->solution.coefficients, 1.0,
                      ref_sample);
  }

  std::vector<ConvergenceRecord> records;
  for (int J : levels) {
    const CombinationPlan plan = plan_for(method, d, J);
    const PlanRun run = run_plan(plan, problem, options.workers);

    ConvergenceRecord rec;
    rec.method = method;
    rec.d = d;
    rec.p = problem.degree;
    rec.r = problem.regularity;
    rec.gamma = problem.gamma;
    rec.J = J;
    rec.h = std::ldexp(1.0, -J);
    rec.n_components = plan.terms.size();
    rec.dofs_total = run.report.total_dofs;
    rec.dofs_max_component = run.report.max_component_dofs;
    rec.time_serial = run.report.serial_time;
    for (int c : options.cores) rec.time_cores.emplace_back(c, run.report.optimized_time(c));
    if (options.run_reports) options.run_reports->push_back(run.report);

    ErrorNorms err;
    if (problem.has_exact()) {
      const QuadratureGrid grid = QuadratureGrid::dyadic(
          *problem.geometry, std::vector<int>(static_cast<std::size_t>(d), J), problem.gamma, q);
      const FieldSample exact = sample_function(grid, problem.exact, problem.exact_gradient);
      err = error_norms(grid, sample_combined(grid, plan, run.components, true), exact);
    } else {
      err = error_norms(*ref_grid, sample_combined(*ref_grid, plan, run.components, true),
                        ref_sample);
    }
    rec.l2_error = err.l2;
    rec.h1_semi_error = err.h1_semi;
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

RateFit fit_records(std::span<const ConvergenceRecord> records, bool l2) {
  std::vector<int> levels;
  std::vector<double> errors;
  for (const auto& r : records) {
    if (r.J < 2) continue;
    levels.push_back(r.J);
    errors.push_back(l2 ? r.l2_error : r.h1_semi_error);
  }
  return fit_rate(levels, errors);
}

}  // namespace

RateFit fit_l2_rate(std::span<const ConvergenceRecord> records) { return fit_records(records, true); }
RateFit fit_h1_rate(std::span<const ConvergenceRecord> records) { return fit_records(records, false); }

std::string convergence_csv(std::span<const ConvergenceRecord> records) {
  std::vector<std::string> header{"method",       "d",          "p",
                                  "r",            "gamma",      "J",
                                  "h",            "n_components", "dofs_total",
                                  "dofs_max_component", "l2_error", "h1_semi_error",
                                  "time_serial_s"};
  if (!records.empty())
    for (const auto& [c, t] : records.front().time_cores)
      header.push_back("time_cores_" + std::to_string(c) + "_s");
  CsvWriter csv(header);
  for (const auto& r : records) {
    std::vector<std::string> row{to_string(r.method),
                                 std::to_string(r.d),
                                 std::to_string(r.p),
                                 std::to_string(r.r),
                                 format_double(r.gamma),
                                 std::to_string(r.J),
                                 format_double(r.h),
                                 std::to_string(r.n_components),
                                 std::to_string(r.dofs_total),
                                 std::to_string(r.dofs_max_component),
                                 format_double(r.l2_error),
                                 format_double(r.h1_semi_error),
                                 format_double(r.time_serial)};
    for (const auto& [c, t] : r.time_cores) row.push_back(format_double(t));
    csv.add_row(row);
  }
  return csv.str();
}

std::vector<ConvergenceRecord> parse_convergence_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  std::vector<std::pair<std::size_t, int>> core_cols;
  const std::string prefix = "time_cores_";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const auto& h = table.header[i];
    if (h.starts_with(prefix) && h.ends_with("_s"))
      core_cols.emplace_back(i, std::stoi(h.substr(prefix.size(), h.size() - prefix.size() - 2)));
  }
  auto col = [&](const std::vector<std::string>& row, const char* name) -> const std::string& {
    return row[table.column(name)];
  };
  std::vector<ConvergenceRecord> out;
  for (const auto& row : table.rows) {
    ConvergenceRecord r;
    r.method = parse_method(col(row, "method"));
    r.d = std::stoi(col(row, "d"));
    r.p = std::stoi(col(row, "p"));
    r.r = std::stoi(col(row, "r"));
    r.gamma = parse_double(col(row, "gamma"));
    r.J = std::stoi(col(row, "J"));
    r.h = parse_double(col(row, "h"));
    r.n_components = std::stoul(col(row, "n_components"));
    r.dofs_total = std::stoul(col(row, "dofs_total"));
    r.dofs_max_component = std::stoul(col(row, "dofs_max_component"));
    r.l2_error = parse_double(col(row, "l2_error"));
    r.h1_semi_error = parse_double(col(row, "h1_semi_error"));
    r.time_serial = parse_double(col(row, "time_serial_s"));
    for (const auto& [i, c] : core_cols) r.time_cores.emplace_back(c, parse_double(row[i]));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ProfitRow> profit_table(const Problem& problem, int bound, int workers) {
  if (bound < 0) throw std::invalid_argument("profit_table: bound must be non-negative");
  const auto indices =
      box_set(MultiIndex(std::vector<int>(static_cast<std::size_t>(problem.dim()), bound)));
  const auto components = solve_components(problem, indices, workers);
  std::map<MultiIndex, const ComponentSolution*> by_index;
  for (const auto& c : components) by_index[c.index] = &c;
  const ComponentLookup lookup = [&](const MultiIndex& beta) -> const ComponentSolution& {
    return *by_index.at(beta);
  };

  std::vector<ProfitRow> rows;
  for (const auto& beta : indices) {
    const SurplusNorm s = surplus_norm(problem, beta, lookup);
    rows.push_back({beta, s.l2, s.dofs, s.l2 / static_cast<double>(s.dofs)});
  }
  return rows;
}

std::string profit_csv(std::span<const ProfitRow> rows) {
  const int d = rows.empty() ? 0 : rows.front().index.dim();
  std::vector<std::string> header;
  for (int l = 1; l <= d; ++l) header.push_back("beta_" + std::to_string(l));
  for (const char* h : {"surplus_l2", "dofs", "profit"}) header.emplace_back(h);
  CsvWriter csv(header);
  for (const auto& r : rows) {
    std::vector<std::string> row;
    for (int v : r.index.levels()) row.push_back(std::to_string(v));
    row.push_back(format_double(r.surplus_l2));
    row.push_back(std::to_string(r.dofs));
    row.push_back(format_double(r.profit));
    csv.add_row(row);
  }
  return csv.str();
}

std::vector<ProfitRow> parse_profit_csv(const std::string& text) {
  const CsvTable table = parse_csv(text);
  int d = 0;
  while (std::find(table.header.begin(), table.header.end(),
                   "beta_" + std::to_string(d + 1)) != table.header.end())
    ++d;
  std::vector<ProfitRow> out;
  for (const auto& row : table.rows) {
    std::vector<int> lv;
    for (int l = 1; l <= d; ++l) lv.push_back(std::stoi(row[table.column("beta_" + std::to_string(l))]));
    out.push_back({MultiIndex(lv), parse_double(row[table.column("surplus_l2")]),
                   std::stoul(row[table.column("dofs")]), parse_double(row[table.column("profit")])});
  }
  return out;
}

std::vector<GammaSweepRow> gamma_sweep(const Problem& problem, std::span<const double> gammas,
                                       std::span<const Method> methods, std::span<const int> levels,
                                       const StudyOptions& options) {
  if (gammas.empty()) throw std::invalid_argument("gamma_sweep: empty gamma list");
  if (levels.empty()) throw std::invalid_argument("gamma_sweep: no levels given");
  std::vector<GammaSweepRow> rows;
  for (double gamma : gammas) {
    Problem pb = problem;
    pb.gamma = gamma;
    StudyOptions opts = options;
    opts.reference = nullptr;
    std::optional<ReferenceSolution> reference;
    if (!pb.has_exact()) {
      reference = compute_reference(pb, *std::max_element(levels.begin(), levels.end()) + 2);
      opts.reference = &*reference;
    }
    for (Method m : methods) {
      const auto records = convergence_study(pb, m, levels, opts);
      rows.push_back({gamma, m, fit_l2_rate(records).slope, fit_h1_rate(records).slope});
    }
  }
  return rows;
}

std::string gamma_sweep_csv(std::span<const GammaSweepRow> rows) {
  CsvWriter csv({"gamma", "method", "l2_rate", "h1_rate"});
  for (const auto& r : rows)
    csv.add_row({format_double(r.gamma), to_string(r.method), format_double(r.l2_rate),
                 format_double(r.h1_rate)});
  return csv.str();
}

}  // namespace sgiga
