#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  namespace cli = lieham::cli;
  CLI::App app{"Build, integrate and verify t-dependent Lie-Hamilton systems"};
  app.set_version_flag("--version", std::string(LIEHAM_VERSION_STRING));
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List catalog systems with their parameters");

  std::string describe_name;
  auto* describe = app.add_subcommand("describe", "Show parameters and coefficients of a system");
  describe->add_option("system", describe_name, "system name")->required();

  std::string sim_config;
  std::optional<std::string> sim_output;
  auto* simulate = app.add_subcommand("simulate", "Integrate a configured system, write CSV and manifest");
  simulate->add_option("config", sim_config, "JSON run config")->required();
  simulate->add_option("-o,--output", sim_output, "CSV path (overrides the config)");

  std::string check_target;
  std::optional<std::string> check_arg;
  auto* check = app.add_subcommand("check", "Run verification checks and print a residual table");
  check->add_option("target", check_target, "algebra <name> | realization <system> | invariants <config> | tables | all")
      ->required();
  check->add_option("name", check_arg, "algebra, system or config");

  std::string sweep_config;
  std::optional<std::size_t> sweep_workers;
  std::optional<std::string> sweep_output;
  auto* sweep = app.add_subcommand("sweep", "Run one trajectory per sweep value and collect drifts");
  sweep->add_option("config", sweep_config, "JSON run config with a sweep block")->required();
  sweep->add_option("-w,--workers", sweep_workers, "worker threads (overrides the config)");
  sweep->add_option("-o,--output", sweep_output, "CSV path (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  if (list->parsed()) return cli::cmd_list(std::cout);
  if (describe->parsed()) return cli::cmd_describe(describe_name, std::cout, std::cerr);
  if (simulate->parsed()) return cli::cmd_simulate(sim_config, sim_output, std::cout, std::cerr);
  if (check->parsed()) return cli::cmd_check(check_target, check_arg, std::cout, std::cerr);
  if (sweep->parsed()) return cli::cmd_sweep(sweep_config, sweep_workers, sweep_output, std::cout, std::cerr);
  return cli::kConfigError;
}
