// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/sim.hpp"
#include "oracles.hpp"

using namespace frontlab;

namespace {

/// Every particle leaves exactly one offspring: the r dt = 0 dynamics.
OffspringFamily pure_walk() {
  return certify(OffspringFamily::custom([](double, double) { return std::vector<double>{0.0, 1.0}; }, "walk"));
}

EngineConfig small_config() {
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.02;
  c.seed = 2024;
  c.horizon = 30;
  return c;
}

TEST(Population, SparseInvariants) {
  auto p = PopulationState::block(-3, 2, 4);
  EXPECT_EQ(p.total(), 20u);
  EXPECT_EQ(p.leftmost_site(), -3);
  EXPECT_EQ(p.rightmost_site(), 1);
  p.add(7, 0);
  EXPECT_EQ(p.counts.count(7), 0u);
  EXPECT_EQ(p.count_above(0.0, 0.5), 4u);
  EXPECT_NO_THROW(p.validate());
  p.counts[9] = 0;
  EXPECT_THROW(p.validate(), ConfigurationError);
}

TEST(Step, ConservationWithoutBranching) {
  EngineConfig c = small_config();
  c.family = pure_walk();
  c.K = 5;
  c.initial = PopulationState::single(0, 5);
  ParticleEngine engine(c);
  for (int k = 0; k < 50; ++k) {
    engine.step();
    ASSERT_EQ(engine.total(), 5u);
  }
}

TEST(Step, SingleParticleMovesByStepLaw) {
  EngineConfig c = small_config();
  c.family = pure_walk();
  StepLaw law(c.dt, c.dx);
  std::vector<std::uint64_t> h(law.cells(), 0);
  for (std::uint32_t rep = 0; rep < 20000; ++rep) {
    c.replicate = rep;
    const auto next = step_generation(PopulationState::single(), c);
    ASSERT_EQ(next.total(), 1u);
    ASSERT_EQ(next.generation, 1);
    const auto site = next.counts.begin()->first;
    ASSERT_LE(std::llabs(site), law.J_trunc());
    ++h[static_cast<std::size_t>(site + law.J_trunc())];
  }
  EXPECT_GT(oracle::chi_square_pvalue(h, law.weights()), 1e-4);
}

TEST(Step, MeanPopulationGrowsGeometrically) {
  EngineConfig c = small_config();
  c.horizon = 10;
  const int reps = 10000;
  double sum = 0.0, sum2 = 0.0;
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  for (int r = 0; r < reps; ++r) {
    c.replicate = static_cast<std::uint32_t>(r);
    ParticleEngine engine(c, law);
    for (int k = 0; k < 10; ++k) engine.step();
    const double n = static_cast<double>(engine.total());
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, std::pow(1.1, 10), 3.0 * se);
}

TEST(Step, CapacityBoundsSiteOffspring) {
  EngineConfig c = small_config();
  c.K = 3;
  c.initial = PopulationState::single(0, 3);
  c.dx = 10.0;  // displacement stays at the origin with overwhelming probability
  ParticleEngine engine(c);
  for (int k = 0; k < 20; ++k) {
    engine.step();
    ASSERT_LE(engine.total(), 3u);
  }
}

TEST(Step, RateTimesStepAboveOneRejected) {
  EngineConfig c = small_config();
  c.env = Environment::constant(20.0);
  EXPECT_THROW(run(c), ConfigurationError);
}

TEST(Config, Validation) {
  EngineConfig c = small_config();
  c.eps = 0.0;
  EXPECT_THROW(validate_config(c), ConfigurationError);
  c = small_config();
  c.K = 0;
  EXPECT_THROW(validate_config(c), ConfigurationError);
  c = small_config();
  c.initial = PopulationState{};
  EXPECT_THROW(validate_config(c), ConfigurationError);
  c = small_config();
  c.family = OffspringFamily::custom([](double, double) { return std::vector<double>{0.0, 1.0}; }, "raw");
  EXPECT_THROW(validate_config(c), ConfigurationError);
}

TEST(Run, TimesAreExactRescaledProducts) {
  EngineConfig c = small_config();
  c.eps = 0.1;
  c.record_every = 3;
  const auto t = run(c);
  ASSERT_EQ(t.steps.front(), 0);
  ASSERT_EQ(t.steps.back(), c.horizon);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.times[i], 0.1 * static_cast<double>(t.steps[i]) * 0.1);
    if (i > 0) EXPECT_GT(t.times[i], t.times[i - 1]);
  }
  EXPECT_EQ(t.times.size(), t.positions.size());
}

TEST(Run, DeterministicAndIndependentOfThreads) {
  EngineConfig c = small_config();
  c.K = 20;
  c.initial = PopulationState::block(-20, 0, 1);
  auto once = [&](std::size_t threads) {
    return parallel_map(6, threads, [&](std::size_t i) {
      EngineConfig e = c;
      e.replicate = static_cast<std::uint32_t>(i);
      return run(e).positions;
    });
  };
  const auto a = once(1), b = once(3), d = once(6);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
  EXPECT_NE(a[0], a[1]);
}

TEST(Run, RandomWalkFrontHasMeanZero) {
  EngineConfig c = small_config();
  c.family = pure_walk();
  c.horizon = 25;
  double sum = 0.0, sum2 = 0.0;
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    c.replicate = static_cast<std::uint32_t>(r);
    const double x = run(c).positions.back();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / reps;
  const double var = sum2 / reps - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4.0 * std::sqrt(var / reps));
  // Variance of the lattice step is dt + dx^2 / 12 up to the folded tail.
  EXPECT_NEAR(var / (25 * (0.1 + 0.02 * 0.02 / 12)), 1.0, 0.1);
}

TEST(Run, ExtinctionRecordedWithNaN) {
  EngineConfig c = small_config();
  c.family = certify(OffspringFamily::custom(
      [](double r, double dt) { return std::vector<double>{0.5, 0.5 - r * dt, r * dt}; }, "lossy"));
  c.horizon = 400;
  const auto t = run(c);
  EXPECT_TRUE(t.meta.extinct);
  EXPECT_GT(t.meta.extinction_generation, 0);
  EXPECT_TRUE(std::isnan(t.positions.back()));
}

TEST(Run, WindowGuardTrips) {
  EngineConfig c = small_config();
  c.max_window_sites = 50;
  EXPECT_THROW(run(c), WindowFault);
}

TEST(Run, DenseScatterKeepsMeanGrowth) {
  EngineConfig c = small_config();
  c.dense_threshold = 1;
  c.horizon = 10;
  c.initial = PopulationState::single(0, 100);
  double sum = 0.0;
  const int reps = 2000;
  for (int r = 0; r < reps; ++r) {
    c.replicate = static_cast<std::uint32_t>(r);
    ParticleEngine engine(c);
    for (int k = 0; k < 10; ++k) engine.step();
    sum += static_cast<double>(engine.total());
  }
  // Poisson scatter has the exact mean; the spread is larger than the exact one.
  EXPECT_NEAR(sum / reps / (100 * std::pow(1.1, 10)), 1.0, 0.01);
}

TEST(Run, PruningDropsOnlySitesBehindTheFront) {
  EngineConfig c = small_config();
  c.prune_depth = 1.0;
  c.horizon = 60;
  ParticleEngine engine(c);
  for (int k = 0; k < 60; ++k) {
    engine.step();
    ASSERT_GE(engine.leftmost_site(), engine.rightmost_site() - 50);
  }
}

TEST(Reboot, PeriodFromCapacity) {
  EXPECT_EQ(reboot_period(10000), 9);
  EXPECT_EQ(reboot_period(1000), 6);
  EXPECT_THROW(reboot_period(kUnbounded), ConfigurationError);
}

TEST(Reboot, UnitPeriodKeepsOneParticle) {
  EngineConfig c = small_config();
  c.K = 100;
  c.horizon = 40;
  const auto r = run_rebooted(c, 1);
  EXPECT_EQ(r.blocks, 40u);
  EXPECT_EQ(r.block_drift.size(), 40u);
  EXPECT_EQ(r.capacity_hits, 0u);
  // Each block moves the front by the best of at most two displacements.
  const StepLaw law(c.dt, c.dx);
  for (auto d : r.block_drift) EXPECT_LE(std::llabs(d), law.J_trunc());
}

TEST(Stopping, CapacityOneHitsImmediately) {
  EngineConfig c = small_config();
  c.K = 1;
  const auto obs = observe_stopping(c, 1e-4, 9);
  ASSERT_TRUE(obs.tau_capacity.has_value());
  EXPECT_LE(*obs.tau_capacity, 1);
  EXPECT_DOUBLE_EQ(obs.radius, 10.0);
}

TEST(Stopping, EscapeRadius) {
  EXPECT_DOUBLE_EQ(escape_radius(1e-4), 10.0);
  EXPECT_THROW(escape_radius(0.0), ConfigurationError);
}

TEST(Speed, LinearTraceIsExact) {
  FrontTrace t;
  for (int k = 0; k < 40; ++k) t.push(k, 0.1 * k, 2.0 * 0.1 * k);
  const auto s = estimate_speed(t, 0.5);
  EXPECT_NEAR(s.slope, 2.0, 1e-12);
  EXPECT_NEAR(s.stderr_, 0.0, 1e-10);
  EXPECT_EQ(s.points, 20u);
}

TEST(Speed, DegenerateTracesRejected) {
  FrontTrace t;
  for (int k = 0; k < 5; ++k) t.push(k, 0.1 * k, 0.0);
  EXPECT_THROW(estimate_speed(t), NumericalError);
  EXPECT_THROW(fit_line({1, 1, 1, 1}, {0, 1, 2, 3}), NumericalError);
}

TEST(Speed, StandardErrorMatchesTextbookFormula) {
  const std::vector<double> t = {0, 1, 2, 3, 4, 5};
  const std::vector<double> x = {0.1, 0.9, 2.2, 2.8, 4.1, 5.0};
  const auto s = fit_line(t, x);
  // Reference from the normal equations.
  const double n = 6, st = 15, sx = 15.1, stt = 55;
  double stx = 0;
  for (int i = 0; i < 6; ++i) stx += t[i] * x[i];
  const double slope = (n * stx - st * sx) / (n * stt - st * st);
  const double icpt = (sx - slope * st) / n;
  double ssr = 0;
  for (int i = 0; i < 6; ++i) ssr += std::pow(x[i] - icpt - slope * t[i], 2);
  EXPECT_NEAR(s.slope, slope, 1e-12);
  EXPECT_NEAR(s.intercept, icpt, 1e-12);
  EXPECT_NEAR(s.stderr_, std::sqrt(ssr / (n - 2) / (stt - st * st / n)), 1e-12);
}

}  // namespace
