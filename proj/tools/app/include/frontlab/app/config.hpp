// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/env.hpp"
#include "frontlab/offspring.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/population.hpp"

namespace frontlab::app {

enum class Kind { particle, brw, rebooted, coupled, ode, pde, speeds, figure1_panel };

Kind parse_kind(const std::string& name);
std::string to_string(Kind kind);

/// Environment as written in a config file.
struct EnvSpec {
  std::string type = "constant";  // constant | periodic | sinusoid
  double r = 1.0;
  double period = 1.0;
  double mu_plus = 3.0;
  double mu_minus = 0.1;
  double mean = 2.0;
  double amplitude = 1.0;
  double wavenumber = 1.0;

  Environment build() const;
};

struct InitialSpec {
  std::string type = "single";  // single | half_line
  std::uint64_t count = 1;      // particles at site 0 (single) or per site (half_line)
  double extent = 10.0;         // half_line: occupied length behind the origin

  PopulationState build(double dx) const;
};

/// Parsed and validated experiment description. Every field has a definite value,
/// so to_json(parse_config(x)) is a complete, canonical echo.
struct ExperimentConfig {
  Kind kind = Kind::particle;
  std::string output = "run";
  std::uint64_t seed = 1;
  std::uint32_t replicates = 1;
  double window_fraction = 0.5;
  EnvSpec environment;

  // Lattice engines.
  double dt = 0.0;
  double dx = 0.0;
  double eps = 1.0;
  std::uint64_t K = kUnbounded;
  double T = 0.0;  // rescaled horizon
  InitialSpec initial;
  std::int64_t record_every = 1;
  double prune_depth = 0.0;           // 0 disables pruning
  std::uint64_t dense_threshold = 0;  // 0 disables dense scatter
  std::int64_t max_window_sites = 20'000'000;
  bool regime_check = false;

  // rebooted
  std::int64_t period = 0;  // 0 selects floor(log K)
  // coupled: process 2 overrides
  std::uint64_t second_K = kUnbounded;
  std::optional<EnvSpec> second_environment;

  // ode
  double h = 1e-3;
  double x0 = 0.0;

  // pde
  double hx = 0.05;
  double pde_dt = 0.0;
  double record_dt = 0.1;
  Reaction reaction = Reaction::logistic;
  bool half_level = false;

  // figure1_panel
  double eps_fixed = 0.1;
  std::uint64_t K_fixed = 1000;
  std::vector<double> eps_ladder = {0.2, 0.1, 0.05};
  std::vector<std::uint64_t> K_ladder = {100, 10000, 1000000};
};

/// Invalid configuration. message() lists one diagnostic per line, each naming
/// the field path and, when known, the line in the source text.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Parses config text. A run manifest is also accepted; its config echo is used.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Dx bound (1/5) sqrt(2 log2 r_inf) dt of the regime hypothesis.
double regime_dx_bound(double r_inf, double dt);
/// Warnings that do not block the run.
std::vector<std::string> config_warnings(const ExperimentConfig& config);

}  // namespace frontlab::app
