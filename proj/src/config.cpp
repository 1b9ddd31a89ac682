#include "sgiga/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sgiga/benchmarks.hpp"

namespace sgiga {

namespace {

using nlohmann::json;

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{
      "geometry", "d",     "r_in",    "r_out", "height",   "p",          "regularity", "gamma",
      "method",   "J",     "J_range", "problem", "cores",  "budget_K",   "output_dir", "workers",
      "max_level", "basis"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");

  RunConfig c;
  if (j.contains("geometry")) c.geometry = get_as<std::string>(j, "geometry");
  if (j.contains("d")) c.d = get_as<int>(j, "d");
  if (j.contains("r_in")) c.r_in = get_as<double>(j, "r_in");
  if (j.contains("r_out")) c.r_out = get_as<double>(j, "r_out");
  if (j.contains("height")) c.height = get_as<double>(j, "height");
  if (j.contains("p")) c.p = get_as<int>(j, "p");
  if (j.contains("regularity")) c.regularity = get_as<int>(j, "regularity");
  if (j.contains("gamma")) {
    if (j["gamma"].is_array())
      c.gamma = get_as<std::vector<double>>(j, "gamma");
    else
      c.gamma = {get_as<double>(j, "gamma")};
  }
  if (j.contains("method")) {
    std::vector<std::string> names;
    if (j["method"].is_array())
      names = get_as<std::vector<std::string>>(j, "method");
    else
      names = {get_as<std::string>(j, "method")};
    c.methods.clear();
    for (const auto& n : names) {
      try {
        c.methods.push_back(parse_method(n));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    if (c.methods.empty()) throw ConfigError("config field 'method' is empty");
  }
  if (j.contains("J")) c.J = get_as<int>(j, "J");
  if (j.contains("J_range")) c.J_range = get_as<std::vector<int>>(j, "J_range");
  if (j.contains("problem")) c.problem = get_as<std::string>(j, "problem");
  if (j.contains("cores")) c.cores = get_as<std::vector<int>>(j, "cores");
  if (j.contains("budget_K")) c.budget_K = get_as<double>(j, "budget_K");
  if (j.contains("max_level")) c.max_level = get_as<int>(j, "max_level");
  if (j.contains("workers")) c.workers = get_as<int>(j, "workers");
  if (j.contains("basis")) c.basis = get_as<std::string>(j, "basis");
  if (j.contains("output_dir")) c.output_dir = get_as<std::string>(j, "output_dir");

  if (c.geometry != "quarter_annulus" && c.geometry != "unit_hypercube")
    throw ConfigError("config field 'geometry' must be quarter_annulus or unit_hypercube");
  if (c.problem != "regular" && c.problem != "constant_forcing" && c.problem != "polynomial")
    throw ConfigError("config field 'problem' must be regular, constant_forcing or polynomial");
  if (c.problem == "polynomial" && c.geometry != "unit_hypercube")
    throw ConfigError("problem 'polynomial' requires geometry unit_hypercube");
  if (c.problem != "polynomial" && c.geometry != "quarter_annulus")
    throw ConfigError("problem '" + c.problem + "' requires geometry quarter_annulus");
  if (c.basis != "bspline" && c.basis != "nurbs")
    throw ConfigError("config field 'basis' must be bspline or nurbs");
  if (c.d < 1 || c.d > 3) throw ConfigError("config field 'd' must be 1, 2 or 3");
  if (c.p < 1) throw ConfigError("config field 'p' must be >= 1");
  if (c.regularity < 0 || c.regularity > c.p - 1)
    throw ConfigError("config field 'regularity' must lie in [0, p-1]");
  for (double g : c.gamma)
    if (!(g >= 1.0)) throw ConfigError("config field 'gamma' values must be >= 1");
  for (int cc : c.cores)
    if (cc < 1) throw ConfigError("config field 'cores' values must be >= 1");
  if (c.workers < 1) throw ConfigError("config field 'workers' must be >= 1");
  if (c.max_level < 0) throw ConfigError("config field 'max_level' must be >= 0");
  if (c.J && *c.J < 0) throw ConfigError("config field 'J' must be >= 0");
  for (std::size_t i = 0; i < c.J_range.size(); ++i) {
    if (c.J_range[i] < 0) throw ConfigError("config field 'J_range' values must be >= 0");
    if (i && c.J_range[i] <= c.J_range[i - 1])
      throw ConfigError("config field 'J_range' must be strictly increasing");
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Problem make_problem(const RunConfig& c, double gamma) {
  try {
    Problem pb;
    if (c.problem == "polynomial")
      pb = polynomial_cube_problem(c.d, c.p, c.regularity, gamma);
    else if (c.problem == "regular")
      pb = regular_annulus_problem(c.d, c.p, c.regularity, gamma, c.r_in, c.r_out, c.height);
    else
      pb = constant_forcing_problem(c.d, c.p, c.regularity, gamma, c.r_in, c.r_out, c.height);
    pb.rational_basis = c.basis == "nurbs";
    return pb;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace sgiga
