// mcsim: run crowdsensing task-assignment simulations and verification.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mcs/cli/commands.hpp"

namespace {

void add_overrides(CLI::App* cmd, mcs::cli::Overrides& o) {
  cmd->add_option("--seed", o.seed, "Master seed (overrides MCS_SEED and the config)");
  cmd->add_option("--replications", o.replications, "Monte-Carlo replications")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rounds", o.rounds, "Rounds per replication")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized task assignment simulator for mobile crowdsensing"};
  app.require_subcommand(1);

  mcs::cli::RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a campaign from a key = value config file");
  run_cmd->add_option("config", run.config, "Scenario config file")->required();
  run_cmd->add_option("--strategies", run.strategies,
                      "Comma-separated list of ca-mab-sfs, eps-greedy, mcsp-strategic, o-daa, "
                      "o-swm (default: all)");
  run_cmd->add_option("--out", run.out, "Output directory for metrics.csv and summary.json");
  add_overrides(run_cmd, run.overrides);

  mcs::cli::ScenarioOptions scenario;
  CLI::App* fig_cmd =
      app.add_subcommand("paper-scenarios", "Run the desk-scale preset for one figure");
  fig_cmd->add_option("figure", scenario.figure, "fig2 ... fig10")->required();
  fig_cmd->add_option("--out", scenario.out, "Output directory for metrics.csv and summary.json");
  add_overrides(fig_cmd, scenario.overrides);

  bool small = false;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check matching oracles against brute-force enumeration");
  verify_cmd->add_flag("--small", small, "Fewer instances (still up to 6 MUs x 6 slots)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? mcs::cli::kExitOk : mcs::cli::kExitUsage;
  }

  try {
    if (*run_cmd) return mcs::cli::cmd_run(run, std::cout, std::cerr);
    if (*fig_cmd) return mcs::cli::cmd_scenarios(scenario, std::cout, std::cerr);
    if (*verify_cmd) return mcs::cli::cmd_verify(small, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mcs::cli::kExitUsage;
  }
  return mcs::cli::kExitUsage;
}
