#pragma once

// Command-line front end: `cr3kit verify|curvature|deform`.
//
// Exit codes: 0 every check passed, 1 a check failed or a deformation was
// rejected, 2 usage or configuration error.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cr3kit/errors.hpp"
#include "cr3kit/sasaki.hpp"

namespace cr3kit::cli {

using nlohmann::json;

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct DeformSpec {
  std::string kind;  // type0, type1, type2
  double c = 1.0;
  std::string f;
  std::string sigma;
};

struct RunConfig {
  std::string model = "flat";
  std::optional<std::string> u;
  std::optional<std::array<std::string, 2>> a;
  std::optional<std::string> connection;  // "P*dx + Q*dy"
  double fiber_len = 1.0;
  std::optional<DeformSpec> deformation;
  std::map<std::string, double> tolerances;  // per-check overrides
};

// Tables, key = value, strings, numbers, booleans and flat arrays. Dotted
// keys, inline tables and multi-line values are rejected.
json parse_toml_subset(const std::string& text);
// By extension (.json, .toml), otherwise JSON first and TOML second.
json load_config_file(const std::string& path);
RunConfig config_from_json(const json& j);
SasakiChart build_chart(const RunConfig& cfg);

struct Check {
  std::string name;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::optional<Point> worst;
};

json to_json(const Check& c);

struct SuiteOptions {
  int grid = 16;
  std::uint64_t seed = 1;
  std::optional<double> tol;                  // overrides every tolerance
  std::map<std::string, double> tolerances;   // per-check overrides
};

// Suites: frame, connection, curvature, deform, all. Checks sorted by name.
std::vector<Check> run_suite(const SasakiChart& c, const std::string& suite,
                             const SuiteOptions& opt);
// Curvature checks on an arbitrary structure over grid x grid x 4 points.
// Without a valid base the Gauss curvature comparison is left out.
std::vector<Check> curvature_checks(const SasakianStructure& s, const SuiteOptions& opt,
                                    const std::string& prefix = "", bool with_base = true);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cr3kit::cli
