#pragma once

#include <ostream>
#include <string>

#include "sgiga/config.hpp"

namespace sgiga {

/// One solve at fixed J; writes solve_summary.json and returns its text.
std::string cmd_solve(const RunConfig& config, std::ostream& progress);

/// Convergence table for every configured method; writes convergence.csv and
/// timings_<method>.csv (per-component timings of the finest level).
void cmd_convergence(const RunConfig& config, std::ostream& progress);

/// Profit table over the box beta_l <= max_level plus the Dantzig selection
/// for budget_K; writes profits.csv and selection.json.
void cmd_profits(const RunConfig& config, std::ostream& progress);

/// Fitted rates per (gamma, method); writes gamma_sweep.csv.
void cmd_gamma_sweep(const RunConfig& config, std::ostream& progress);

/// Command-line entry point. Exit codes: 0 success, 1 solver failure,
/// 2 usage or configuration error.
int run_cli(int argc, char** argv);

}  // namespace sgiga
