#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgiga/analysis.hpp"
#include "sgiga/problem.hpp"

namespace sgiga {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Batch run configuration, read from one JSON document. Unknown keys are
/// rejected.
struct RunConfig {
  std::string geometry = "quarter_annulus";  // or "unit_hypercube"
  int d = 2;
  double r_in = 1.0;
  double r_out = 2.0;
  double height = 1.0;
  int p = 2;
  int regularity = 1;
  /// One value for solve/convergence/profits; the sweep list for gamma-sweep.
  std::vector<double> gamma{1.0};
  std::vector<Method> methods{Method::sparse};
  std::optional<int> J;
  std::vector<int> J_range;
  std::string problem = "regular";  // "regular", "constant_forcing", "polynomial"
  std::vector<int> cores{1};
  std::optional<double> budget_K;
  /// Box bound for the profit table (beta_l <= max_level).
  int max_level = 4;
  /// Analysis basis: "bspline" or "nurbs" (B-splines divided by the geometry
  /// weight).
  std::string basis = "nurbs";
  int workers = 1;
  std::filesystem::path output_dir = ".";
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Benchmark problem described by the configuration at the given grading.
Problem make_problem(const RunConfig& config, double gamma);

}  // namespace sgiga
