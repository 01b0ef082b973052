// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "frontlab/env.hpp"
#include "frontlab/kernel.hpp"
#include "frontlab/offspring.hpp"
#include "frontlab/population.hpp"

namespace frontlab {

struct EngineConfig {
  Environment env = Environment::constant(1.0);
  OffspringFamily family = OffspringFamily::bernoulli_duplication();
  double dt = 0.1;
  double dx = 0.01;
  double eps = 1.0;
  std::uint64_t K = kUnbounded;
  std::uint64_t seed = 1;
  std::uint32_t replicate = 0;
  std::int64_t horizon = 0;
  PopulationState initial = PopulationState::single();
  std::int64_t record_every = 1;

  // Resource controls. The defaults keep the dynamics exact.
  /// Sites more than this distance behind the rightmost particle are discarded.
  double prune_depth = std::numeric_limits<double>::infinity();
  /// Sites with at least this many offspring scatter by a Poisson field with the
  /// exact mean instead of a multinomial draw.
  std::uint64_t dense_threshold = kUnbounded;
  /// Largest admissible occupied-window width, in sites.
  std::int64_t max_window_sites = 20'000'000;
};

/// Rescaled time eps * k * dt, evaluated left to right.
inline double rescaled_time(double eps, std::int64_t k, double dt) {
  return eps * static_cast<double>(k) * dt;
}

/// Throws ConfigurationError for inadmissible parameters.
void validate_config(const EngineConfig& config);

/// Single-replicate particle engine on a contiguous occupied window.
class ParticleEngine {
 public:
  explicit ParticleEngine(const EngineConfig& config);
  ParticleEngine(const EngineConfig& config, std::shared_ptr<const StepLaw> law);
  ~ParticleEngine();
  ParticleEngine(ParticleEngine&&) noexcept;
  ParticleEngine& operator=(ParticleEngine&&) noexcept;

  /// Reproduction, competition, migration; then pruning if configured.
  void step();

  std::int64_t generation() const;
  bool empty() const;
  std::uint64_t total() const;
  std::int64_t rightmost_site() const;
  std::int64_t leftmost_site() const;
  /// Largest |site| currently occupied.
  std::int64_t max_abs_site() const;
  PopulationState state() const;
  /// Replaces the population, keeping the generation counter.
  void reset(const PopulationState& population);

  double time_rescaled() const;
  /// eps * dx * rightmost site, or NaN if empty.
  double front_rescaled() const;

  const EngineConfig& config() const;
  const StepLaw& law() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One generation from an explicit state. The draw keys come from config.seed,
/// config.replicate and state.generation.
PopulationState step_generation(const PopulationState& state, const EngineConfig& config);

/// Runs config.horizon generations and records the rescaled front.
FrontTrace run(const EngineConfig& config);

struct CoupledResult {
  FrontTrace first;
  FrontTrace second;
  bool dominated = true;
  std::int64_t first_violation = -1;
  std::size_t violations = 0;
  std::size_t hypothesis_checks = 0;
};

/// Runs two engines on shared randomness so that the first dominates the second
/// site by site. Both configs must share dt, dx, eps, seed, replicate and horizon,
/// and use neither pruning nor dense scatter.
CoupledResult run_coupled_pair(const EngineConfig& first, const EngineConfig& second);

struct RebootedResult {
  FrontTrace trace;
  std::int64_t period = 0;
  std::vector<std::int64_t> block_drift;  // rightmost-site change per block
  std::size_t blocks = 0;
  std::size_t capacity_hits = 0;  // blocks whose total reached K
};

/// floor(log K), the natural reboot period.
std::int64_t reboot_period(std::uint64_t K);

/// Every period generations the population is replaced by one particle at the
/// rightmost occupied site. Runs config.horizon generations.
RebootedResult run_rebooted(const EngineConfig& config, std::int64_t period = 0);

struct StoppingObservation {
  std::optional<std::int64_t> tau_capacity;  // first k with total >= K
  std::optional<std::int64_t> tau_escape;    // first k with a particle beyond the radius
  double radius = 0.0;
};

/// eps^{-1/4}.
double escape_radius(double eps);

/// Untruncated run from config.initial, watching the capacity and escape times.
StoppingObservation observe_stopping(const EngineConfig& config, double eps, std::int64_t horizon);

struct SpeedEstimate {
  double slope = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// OLS slope of position against time over the trailing fraction of the trace.
SpeedEstimate estimate_speed(const FrontTrace& trace, double window_fraction = 0.5);
SpeedEstimate fit_line(const std::vector<double>& t, const std::vector<double>& x);

}  // namespace frontlab
