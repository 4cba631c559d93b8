#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace lieham::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDomainViolation = 2, kVerificationFailed = 3 };

/// One integration of a configured system with its monitored invariants.
struct SimulationOutcome {
  Trajectory trajectory;
  InvariantSeries invariants;
  std::vector<double> energy;
};

/// Integrates a configuration built by build_configured_system.
SimulationOutcome run_simulation(const RunConfig& cfg, const SystemSpec& sys);

/// CSV text: t, q1..qn, p1..pn, H, invariants; every float as %.17g.
std::string trajectory_csv(const SimulationOutcome& run, std::size_t n);

int cmd_list(std::ostream& out);
int cmd_describe(const std::string& name, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const std::optional<std::string>& output, std::ostream& out,
                 std::ostream& err);
/// target: "algebra", "realization", "invariants", "tables" or "all"; `arg`
/// names the algebra, system or config file.
int cmd_check(const std::string& target, const std::optional<std::string>& arg, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::optional<std::size_t>& workers,
              const std::optional<std::string>& output, std::ostream& out, std::ostream& err);

/// Tolerances used by `check`.
inline constexpr double kRealizationTol = 1e-9;
inline constexpr double kGradientTol = 1e-5;
inline constexpr double kTableTol = 1e-10;
inline constexpr double kCurvatureTol = 1e-9;
inline constexpr double kInvolutionTol = 1e-9;
inline constexpr double kDriftTol = 1e-6;

}  // namespace lieham::cli
