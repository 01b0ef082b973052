// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "frontlab/app/output.hpp"
#include "frontlab/app/runner.hpp"
#include "frontlab/app/suites.hpp"
#include "frontlab/error.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/speeds.hpp"

namespace app = frontlab::app;

int main(int argc, char** argv) {
  CLI::App cli{"Lattice front-propagation experiments"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", app::version());

  std::size_t threads = frontlab::max_threads();

  auto* run = cli.add_subcommand("run", "Run an experiment config (or re-run a manifest.json)");
  std::string config_path;
  std::string output_dir;
  run->add_option("config", config_path, "Config or manifest file")->required();
  run->add_option("--threads", threads, "Replicate worker threads (default: all cores)")->check(CLI::PositiveNumber);
  run->add_option("--output-dir", output_dir, "Write here instead of $FRONTLAB_OUTPUT_ROOT/<output>");

  auto* check = cli.add_subcommand("check", "Run a property suite, or 'all'");
  std::string suite;
  app::SuiteOptions suite_options;
  check->add_option("suite", suite, "Suite name or 'all'")->required();
  check->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  check->add_option("--scale", suite_options.scale, "Multiplier on Monte Carlo sample sizes")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", suite_options.seed, "Master seed");

  auto* speeds = cli.add_subcommand("speeds", "Closed-form speeds of the two-level periodic field");
  double mu_plus = 0.0, mu_minus = 0.0;
  speeds->add_option("mu_plus", mu_plus)->required()->check(CLI::PositiveNumber);
  speeds->add_option("mu_minus", mu_minus)->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*run) {
      app::RunOptions opts;
      opts.output_root = app::output_root_from_env();
      if (!output_dir.empty()) opts.output_dir = output_dir;
      opts.threads = threads;
      opts.log = &std::cerr;
      return app::run_experiment_file(config_path, opts, std::cerr);
    }
    if (*check) {
      suite_options.threads = threads;
      const auto names = suite == "all" ? app::suite_names() : std::vector<std::string>{suite};
      const auto dir = app::output_root_from_env() / "checks";
      std::filesystem::create_directories(dir);
      bool ok = true;
      for (const auto& name : names) {
        const auto report = app::run_property_suite(name, suite_options);
        std::cout << report.summary() << std::flush;
        app::write_text(dir / (name + ".json"), app::report_to_json(report).dump(2) + "\n");
        ok = ok && report.passed();
      }
      return ok ? 0 : 1;
    }
    if (*speeds) {
      std::cout << frontlab::speed_report(mu_plus, mu_minus).text();
      return 0;
    }
  } catch (const frontlab::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
