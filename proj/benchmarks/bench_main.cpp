// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>

#include "frontlab/kernel.hpp"
#include "frontlab/offspring.hpp"
#include "frontlab/random.hpp"
#include "frontlab/sim.hpp"
#include "frontlab/speeds.hpp"

using namespace frontlab;

namespace {

void BM_Binomial(benchmark::State& state) {
  rng::CounterStream s(1, 0, 0, 0, rng::Purpose::auxiliary);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rng::binomial(s, n, 0.1));
}
BENCHMARK(BM_Binomial)->Arg(10)->Arg(1000)->Arg(1'000'000);

void BM_Poisson(benchmark::State& state) {
  rng::CounterStream s(1, 0, 0, 0, rng::Purpose::auxiliary);
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rng::poisson(s, lambda));
}
BENCHMARK(BM_Poisson)->Arg(3)->Arg(100)->Arg(100000);

void BM_SiteOffspring(benchmark::State& state) {
  rng::CounterStream s(1, 0, 0, 0, rng::Purpose::offspring);
  const auto family = OffspringFamily::bernoulli_duplication();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_site_offspring(family, 1.0, 0.1, n, 1000, s));
}
BENCHMARK(BM_SiteOffspring)->Arg(1)->Arg(100)->Arg(10000);

void BM_StepLawBuild(benchmark::State& state) {
  const double dx = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(StepLaw(0.1, dx).cells());
}
BENCHMARK(BM_StepLawBuild)->Arg(100)->Arg(1000);

void BM_RateFunction(benchmark::State& state) {
  const RateFunction I(0.1, 0.005);
  double y = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(I.rate(0.05 + 1e-3 * y));
    y = y < 100.0 ? y + 1.0 : 0.0;
  }
}
BENCHMARK(BM_RateFunction);

void BM_SolveSpeed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_speed(1.1, 0.1, 0.005));
}
BENCHMARK(BM_SolveSpeed)->Unit(benchmark::kMillisecond);

// Generations per second of the particle engine once the population saturates.
void BM_EngineStep(benchmark::State& state) {
  EngineConfig c;
  c.env = Environment::periodic_piecewise(1.0, 3.0, 0.1);
  c.dt = 0.02;
  c.dx = 0.05;
  c.eps = 0.1;
  c.K = static_cast<std::uint64_t>(state.range(0));
  c.prune_depth = 40.0;
  c.initial = PopulationState::block(-1200, 0, 1);
  ParticleEngine engine(c);
  for (int k = 0; k < 200; ++k) engine.step();
  for (auto _ : state) engine.step();
  state.counters["particles"] = static_cast<double>(engine.total());
}
BENCHMARK(BM_EngineStep)->Arg(100)->Arg(1000)->Arg(1'000'000)->Unit(benchmark::kMicrosecond);

void BM_ClosedForms(benchmark::State& state) {
  double m = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c_star0(m, 0.1) + c_ode(m, 0.1));
    m = m < 4.0 ? m + 1e-6 : 3.0;
  }
}
BENCHMARK(BM_ClosedForms);

}  // namespace

BENCHMARK_MAIN();
