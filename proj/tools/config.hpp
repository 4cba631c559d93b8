#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lieham/catalog.hpp"
#include "lieham/integrate.hpp"

namespace lieham::cli {

/// Invalid or inconsistent run configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  /// "c_k", "kappa", "lambda", "eta", "b", "power", or a coefficient name
  /// (the coefficient is multiplied by each value).
  std::string target;
  std::vector<double> values;
  std::size_t workers = 0;  // 0: hardware concurrency
  std::string output = "sweep.csv";
};

struct RunConfig {
  std::string system;
  SystemParams params;
  Coefficients coefficients;
  std::vector<double> q;
  std::vector<double> p;
  double t0 = 0.0;
  double t1 = 10.0;
  IntegratorConfig integrator;
  std::vector<std::string> invariants;
  std::string output = "trajectory.csv";
  std::uint64_t seed = 0;
  std::optional<SweepSpec> sweep;
  nlohmann::json raw;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Builds the configured system and checks q, p and the invariant names against it.
SystemSpec build_configured_system(RunConfig& cfg);

/// Copy of `base` with the sweep target set to (or scaled by) `value`.
RunConfig apply_sweep_value(const RunConfig& base, const std::string& target, double value);

/// Manifest path next to a CSV: "dir/run.csv" -> "dir/run.manifest.json".
std::string manifest_path(const std::string& csv_path);

}  // namespace lieham::cli
