#include "sgiga/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgiga/analysis.hpp"
#include "sgiga/combination.hpp"
#include "sgiga/scheduler.hpp"

namespace sgiga {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

double single_gamma(const RunConfig& c) {
  if (c.gamma.size() != 1) throw ConfigError("this command takes a single 'gamma' value");
  return c.gamma.front();
}

std::vector<int> levels_of(const RunConfig& c) {
  if (!c.J_range.empty()) return c.J_range;
  if (c.J) return {*c.J};
  throw ConfigError("config needs 'J_range' (or 'J')");
}

}  // namespace

std::string cmd_solve(const RunConfig& config, std::ostream& progress) {
  if (!config.J) throw ConfigError("solve needs config field 'J'");
  if (config.methods.size() != 1) throw ConfigError("solve takes a single 'method'");
  const Problem problem = make_problem(config, single_gamma(config));
  const Method method = config.methods.front();
  const int J = *config.J;

  progress << "solve: " << problem.name << " d=" << config.d << " p=" << config.p
           << " r=" << config.regularity << " " << to_string(method) << " J=" << J << std::endl;

  nlohmann::json summary;
  if (problem.has_exact()) {
    StudyOptions opts;
    opts.cores = config.cores;
    opts.workers = config.workers;
    const std::vector<int> levels{J};
    const auto rec = convergence_study(problem, method, levels, opts).front();
    summary["dofs_total"] = rec.dofs_total;
    summary["dofs_max_component"] = rec.dofs_max_component;
    summary["n_components"] = rec.n_components;
    summary["l2_error"] = rec.l2_error;
    summary["h1_semi_error"] = rec.h1_semi_error;
    summary["time_serial_s"] = rec.time_serial;
  } else {
    const PlanRun run = run_plan(plan_for(method, config.d, J), problem, config.workers);
    summary["dofs_total"] = run.report.total_dofs;
    summary["dofs_max_component"] = run.report.max_component_dofs;
    summary["n_components"] = run.components.size();
    summary["time_serial_s"] = run.report.serial_time;
  }
  const std::string text = summary.dump(2) + "\n";
  write_file(config.output_dir / "solve_summary.json", text);
  progress << "wrote " << (config.output_dir / "solve_summary.json").string() << std::endl;
  return text;
}

void cmd_convergence(const RunConfig& config, std::ostream& progress) {
  const Problem problem = make_problem(config, single_gamma(config));
  const auto levels = levels_of(config);
  StudyOptions opts;
  opts.cores = config.cores;
  opts.workers = config.workers;

  std::optional<ReferenceSolution> reference;
  if (!problem.has_exact()) {
    progress << "computing overkill reference at level " << levels.back() + 2 << std::endl;
    reference = compute_reference(problem, levels.back() + 2);
    opts.reference = &*reference;
  }

  std::vector<ConvergenceRecord> all;
  for (Method m : config.methods) {
    std::vector<RunReport> reports;
    opts.run_reports = &reports;
    const auto records = convergence_study(problem, m, levels, opts);
    for (const auto& r : records)
      progress << to_string(m) << " J=" << r.J << " dofs=" << r.dofs_total
               << " l2=" << r.l2_error << " h1=" << r.h1_semi_error << std::endl;
    if (std::count_if(records.begin(), records.end(), [](const auto& r) { return r.J >= 2; }) >= 3)
      progress << to_string(m) << " fitted rates: l2=" << fit_l2_rate(records).slope
               << " h1=" << fit_h1_rate(records).slope << std::endl;
    all.insert(all.end(), records.begin(), records.end());

    write_file(config.output_dir / ("timings_" + to_string(m) + ".csv"),
               timing_csv(reports.back(), config.cores));
  }
  write_file(config.output_dir / "convergence.csv", convergence_csv(all));
  progress << "wrote " << (config.output_dir / "convergence.csv").string() << std::endl;
}

void cmd_profits(const RunConfig& config, std::ostream& progress) {
  if (!config.budget_K) throw ConfigError("profits needs config field 'budget_K'");
  const Problem problem = make_problem(config, single_gamma(config));
  progress << "profits: box bound " << config.max_level << std::endl;
  const auto rows = profit_table(problem, config.max_level, config.workers);

  std::vector<KnapsackItem> items;
  for (const auto& r : rows) items.push_back({r.index, r.surplus_l2, static_cast<double>(r.dofs)});
  const KnapsackSelection sel = dantzig_select(items, *config.budget_K);

  nlohmann::json j;
  j["budget_K"] = *config.budget_K;
  j["revenue"] = sel.revenue;
  j["cost"] = sel.cost;
  j["selected"] = nlohmann::json::array();
  for (const auto& beta : sel.selected) j["selected"].push_back(beta.levels());

  write_file(config.output_dir / "profits.csv", profit_csv(rows));
  write_file(config.output_dir / "selection.json", j.dump(2) + "\n");
  progress << "selected " << sel.selected.size() << " of " << rows.size()
           << " indices, cost " << sel.cost << std::endl;
}

void cmd_gamma_sweep(const RunConfig& config, std::ostream& progress) {
  if (config.gamma.empty()) throw ConfigError("gamma-sweep needs a non-empty 'gamma' list");
  const auto levels = levels_of(config);
  const Problem problem = make_problem(config, config.gamma.front());
  StudyOptions opts;
  opts.cores = config.cores;
  opts.workers = config.workers;
  std::vector<GammaSweepRow> rows;
  for (double g : config.gamma) {
    const std::vector<double> one{g};
    const auto part = gamma_sweep(problem, one, config.methods, levels, opts);
    for (const auto& r : part)
      progress << "gamma=" << r.gamma << " " << to_string(r.method) << " l2 rate=" << r.l2_rate
               << " h1 rate=" << r.h1_rate << std::endl;
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_file(config.output_dir / "gamma_sweep.csv", gamma_sweep_csv(rows));
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Sparse-grid isogeometric Poisson solver"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<int> workers;
  std::optional<std::string> output;

  std::vector<CLI::App*> subs{app.add_subcommand("solve", "single tensor or sparse solve"),
                              app.add_subcommand("convergence", "convergence table"),
                              app.add_subcommand("profits", "surplus profits and knapsack selection"),
                              app.add_subcommand("gamma-sweep", "fitted rates versus grading")};
  for (auto* s : subs) {
    s->add_option("--config", config_path, "JSON configuration file")->required();
    s->add_option("--workers", workers, "worker threads (overrides config)")->check(CLI::PositiveNumber);
    s->add_option("--output", output, "output directory (overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig config = load_config(config_path);
    if (workers) config.workers = *workers;
    if (output) config.output_dir = *output;

    if (subs[0]->parsed()) cmd_solve(config, std::cout);
    if (subs[1]->parsed()) cmd_convergence(config, std::cout);
    if (subs[2]->parsed()) cmd_profits(config, std::cout);
    if (subs[3]->parsed()) cmd_gamma_sweep(config, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sgiga
