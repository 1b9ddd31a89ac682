#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sgiga/combination.hpp"
#include "sgiga/problem.hpp"

namespace sgiga {

struct ComponentTiming {
  MultiIndex index;
  std::size_t dofs = 0;
  double seconds = 0.0;
};

/// Per-component cost of one plan execution.
struct RunReport {
  std::vector<ComponentTiming> components;  // plan order
  int workers = 1;
  /// Sum of per-component times.
  double serial_time = 0.0;
  /// Measured wall-clock time of the whole pool run.
  double wall_time = 0.0;
  std::size_t total_dofs = 0;
  std::size_t max_component_dofs = 0;

  /// Simulated LPT makespan of the measured component times on `cores`.
  double optimized_time(int cores) const;
};

struct PlanRun {
  std::vector<ComponentSolution> components;  // plan order
  RunReport report;
};

/// Solves the given components on a pool of `workers` threads. Results are in
/// input order and do not depend on the worker count.
std::vector<ComponentSolution> solve_components(const Problem& problem,
                                                std::span<const MultiIndex> indices, int workers);

PlanRun run_plan(const CombinationPlan& plan, const Problem& problem, int workers);

/// Longest-processing-time list scheduling: jobs sorted by decreasing time
/// (stable, so equal times keep input order) go to the earliest-free core.
double optimized_makespan(std::span<const double> times, int cores);

/// Timing table: beta_1..beta_d, dofs, time_s, then one summary row with
/// serial and optimized times per requested core count.
std::string timing_csv(const RunReport& report, std::span<const int> cores);

}  // namespace sgiga
