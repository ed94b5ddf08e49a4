// Batch experiment runner; see README for the config schema.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "ladmpsap/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"LADMPSAP benchmark runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path;
  std::string format;
  std::string out_path;
  std::int64_t seed = -1;
  int max_iter = -1;
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--format", format, "csv|json|table (overrides config)");
  run->add_option("--out", out_path, "output path (overrides config)");
  run->add_option("--seed", seed, "seed override");
  run->add_option("--max-iter", max_iter, "iteration cap override");

  CLI11_PARSE(app, argc, argv);

  const char* log_env = std::getenv("LADMPSAP_LOG");
  const bool verbose = log_env && std::string(log_env) != "quiet" &&
                       std::string(log_env) != "0";

  try {
    auto config = ladmpsap::bench::load_config(config_path);
    if (!format.empty())
      config.format = ladmpsap::bench::parse_report_format(format);
    if (!out_path.empty()) config.out_path = out_path;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (max_iter > 0) config.max_iter = max_iter;

    if (verbose)
      std::cerr << "running experiment '"
                << ladmpsap::bench::to_string(config.kind) << "' with seed "
                << config.seed << "\n";

    const auto rows = ladmpsap::bench::run_experiment(config);
    if (config.out_path.empty())
      ladmpsap::bench::emit_report(rows, config.format, std::cout);
    else
      ladmpsap::bench::emit_report(rows, config.format, config.out_path);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
