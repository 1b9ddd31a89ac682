#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sgiga/combination.hpp"
#include "sgiga/grid.hpp"
#include "sgiga/problem.hpp"
#include "sgiga/scheduler.hpp"

namespace sgiga {

enum class Method { tensor, sparse };

std::string to_string(Method m);
Method parse_method(const std::string& name);

/// Plan solved for level J: the single full tensor [J,...,J] or the
/// simplex combination technique.
CombinationPlan plan_for(Method method, int d, int J);

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

/// L2 error and H1 seminorm error of approx against reference on the grid.
ErrorNorms error_norms(const QuadratureGrid& grid, const FieldSample& approx,
                       const FieldSample& reference);

/// Samples sum_beta c_beta u_beta on a grid (plan order).
FieldSample sample_combined(const QuadratureGrid& grid, const CombinationPlan& plan,
                            std::span<const ComponentSolution> components, bool with_gradient);

struct RateFit {
  /// Least-squares slope s of log2(e) against -J, so that e ~ h^s.
  double slope = 0.0;
  /// log2(e_J / e_{J+1}) for consecutive pairs.
  std::vector<double> step_rates;
};

RateFit fit_rate(std::span<const int> levels, std::span<const double> errors);

struct ConvergenceRecord {
  Method method = Method::sparse;
  int d = 2;
  int p = 2;
  int r = 1;
  double gamma = 1.0;
  int J = 0;
  double h = 1.0;
  std::size_t n_components = 0;
  std::size_t dofs_total = 0;
  std::size_t dofs_max_component = 0;
  double l2_error = 0.0;
  double h1_semi_error = 0.0;
  double time_serial = 0.0;
  /// (cores, simulated time) per requested core count.
  std::vector<std::pair<int, double>> time_cores;

  bool operator==(const ConvergenceRecord&) const = default;
};

/// Overkill reference: full-tensor solve at a fine level with the problem's
/// own degree, continuity and grading.
struct ReferenceSolution {
  int level = 0;
  ComponentSolution solution;
};

ReferenceSolution compute_reference(const Problem& problem, int level);

struct StudyOptions {
  std::vector<int> cores{1};
  int workers = 1;
  /// Error quadrature points per element; 0 selects degree + 3 on the level-J
  /// grid against an analytic solution and degree + 1 on the finer reference
  /// grid otherwise.
  int error_quad_points = 0;
  /// Overkill reference for problems without an analytic solution. When
  /// absent one is computed at max(J) + 2.
  const ReferenceSolution* reference = nullptr;
  /// When set, receives the run report of every level.
  std::vector<RunReport>* run_reports = nullptr;
};

std::vector<ConvergenceRecord> convergence_study(const Problem& problem, Method method,
                                                 std::span<const int> levels,
                                                 const StudyOptions& options = {});

/// Rates fitted over the records with J >= 2.
RateFit fit_l2_rate(std::span<const ConvergenceRecord> records);
RateFit fit_h1_rate(std::span<const ConvergenceRecord> records);

std::string convergence_csv(std::span<const ConvergenceRecord> records);
std::vector<ConvergenceRecord> parse_convergence_csv(const std::string& text);

struct ProfitRow {
  MultiIndex index;
  double surplus_l2 = 0.0;
  std::size_t dofs = 0;
  double profit = 0.0;

  bool operator==(const ProfitRow&) const = default;
};

/// Surplus norms, costs and profits over the box {beta : beta_l <= bound}.
std::vector<ProfitRow> profit_table(const Problem& problem, int bound, int workers = 1);

std::string profit_csv(std::span<const ProfitRow> rows);
std::vector<ProfitRow> parse_profit_csv(const std::string& text);

struct GammaSweepRow {
  double gamma = 1.0;
  Method method = Method::sparse;
  double l2_rate = 0.0;
  double h1_rate = 0.0;
};

std::vector<GammaSweepRow> gamma_sweep(const Problem& problem, std::span<const double> gammas,
                                       std::span<const Method> methods, std::span<const int> levels,
                                       const StudyOptions& options = {});

std::string gamma_sweep_csv(std::span<const GammaSweepRow> rows);

}  // namespace sgiga
