#include "sgiga/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <thread>

#include "sgiga/csv.hpp"

namespace sgiga {

double optimized_makespan(std::span<const double> times, int cores) {
  if (times.empty()) throw std::invalid_argument("optimized_makespan: empty job list");
  if (cores < 1) throw std::invalid_argument("optimized_makespan: need at least one core");
  std::vector<double> jobs(times.begin(), times.end());
  std::stable_sort(jobs.begin(), jobs.end(), std::greater<>());

  std::priority_queue<double, std::vector<double>, std::greater<>> free_at;
  for (int c = 0; c < cores; ++c) free_at.push(0.0);
  double makespan = 0.0;
  for (double t : jobs) {
    const double start = free_at.top();
    free_at.pop();
    free_at.push(start + t);
    makespan = std::max(makespan, start + t);
  }
  return makespan;
}

double RunReport::optimized_time(int cores) const {
  std::vector<double> times;
  for (const auto& c : components) times.push_back(c.seconds);
  return optimized_makespan(times, cores);
}

std::vector<ComponentSolution> solve_components(const Problem& problem,
                                                std::span<const MultiIndex> indices, int workers) {
  if (workers < 1) throw std::invalid_argument("solve_components: workers must be >= 1");
  const std::size_t n = indices.size();
  std::vector<std::optional<ComponentSolution>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(solve_component(problem, indices[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
  }

  std::vector<ComponentSolution> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

PlanRun run_plan(const CombinationPlan& plan, const Problem& problem, int workers) {
  const auto indices = plan.indices();
  const auto start = std::chrono::steady_clock::now();
  PlanRun run;
  run.components = solve_components(problem, indices, workers);
  run.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.report.workers = workers;
  for (const auto& c : run.components) {
    run.report.components.push_back({c.index, c.dofs, c.seconds});
    run.report.serial_time += c.seconds;
    run.report.total_dofs += c.dofs;
    run.report.max_component_dofs = std::max(run.report.max_component_dofs, c.dofs);
  }
  return run;
}

std::string timing_csv(const RunReport& report, std::span<const int> cores) {
  const int d = report.components.empty() ? 0 : report.components.front().index.dim();
  std::vector<std::string> header;
  for (int l = 1; l <= d; ++l) header.push_back("beta_" + std::to_string(l));
  header.push_back("dofs");
  header.push_back("time_s");
  for (int c : cores) header.push_back("time_cores_" + std::to_string(c) + "_s");
  CsvWriter csv(header);
  for (const auto& c : report.components) {
    std::vector<std::string> row;
    for (int v : c.index.levels()) row.push_back(std::to_string(v));
    row.push_back(std::to_string(c.dofs));
    row.push_back(format_double(c.seconds));
    row.resize(header.size());
    csv.add_row(row);
  }
  // Summary row: beta_1 holds the label, dofs the plan total.
  std::vector<std::string> summary(header.size());
  if (d > 0) summary[0] = "summary";
  summary[static_cast<std::size_t>(d)] = std::to_string(report.total_dofs);
  summary[static_cast<std::size_t>(d) + 1] = format_double(report.serial_time);
  for (std::size_t i = 0; i < cores.size(); ++i)
    summary[static_cast<std::size_t>(d) + 2 + i] = format_double(report.optimized_time(cores[i]));
  csv.add_row(summary);
  return csv.str();
}

}  // namespace sgiga
