// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/app/config.hpp"

namespace frontlab::app {

/// Version string written into manifests.
std::string version();

/// FRONTLAB_OUTPUT_ROOT, or ./frontlab-output when unset.
std::filesystem::path output_root_from_env();

struct RunOptions {
  std::filesystem::path output_root = "frontlab-output";
  /// Overrides output_root / config.output when set.
  std::optional<std::filesystem::path> output_dir;
  std::size_t threads = 1;
  std::ostream* log = nullptr;  // warnings and progress; may be null
};

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::string> files;  // written CSVs, in write order
  std::size_t failed = 0;          // replicates that aborted
  int exit_status = 0;             // 0 ok, 1 some replicate failed
};

/// Runs a parsed experiment and writes manifest.json, the trace CSVs and summary.csv.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Loads, validates and runs. Diagnostics go to err; returns the process exit status
/// (2 for an invalid config).
int run_experiment_file(const std::string& config_path, const RunOptions& options, std::ostream& err);

}  // namespace frontlab::app
