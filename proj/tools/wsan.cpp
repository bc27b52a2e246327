#include <iostream>

#include "CLI11.hpp"
#include "wsan/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wireless sensor and actor network simulator with cloud publish/subscribe integration"};
  app.require_subcommand(1);

  int n = 0;
  double r = 0.0;
  auto* plan = app.add_subcommand("plan", "Print the grid deployment and node counts");
  plan->add_option("--n", n, "Cells per side (even, >= 2)")->required();
  plan->add_option("--r", r, "Sensing range in meters")->required();

  std::vector<std::string> to_validate;
  auto* validate = app.add_subcommand("validate", "Check scenario files without running them");
  validate->add_option("scenario", to_validate, "Scenario JSON files")->required();

  std::vector<std::string> to_run;
  std::string trace_path;
  std::string metrics_path;
  std::uint64_t seed = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run scenarios and write trace and metrics");
  run->add_option("scenario", to_run, "Scenario JSON files")->required();
  auto* trace_opt = run->add_option("--trace", trace_path, "Trace output (JSON Lines)");
  auto* metrics_opt = run->add_option("--metrics", metrics_path, "Metrics output (CSV)");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario's network seed");
  run->add_flag("--quiet", quiet, "Suppress the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wsan::cli::kExitValidation;
  }

  if (*plan) return wsan::cli::cmd_plan(n, r, std::cout, std::cerr);
  if (*validate) return wsan::cli::cmd_validate({to_validate.begin(), to_validate.end()}, std::cout, std::cerr);

  wsan::cli::RunOptions options;
  options.scenarios.assign(to_run.begin(), to_run.end());
  if (*trace_opt) options.trace = trace_path;
  if (*metrics_opt) options.metrics = metrics_path;
  if (*seed_opt) options.seed = seed;
  options.quiet = quiet;
  return wsan::cli::cmd_run(options, std::cout, std::cerr);
}
