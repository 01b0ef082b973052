// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/sim.hpp"

using namespace frontlab;

namespace {

PdeState step_profile(double hx, std::size_t n) {
  PdeState s;
  s.hx = hx;
  s.x0 = -hx * static_cast<double>(n / 2);
  s.u.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) s.u[i] = s.x(i) < 0.0 ? 1.0 : 0.0;
  return s;
}

TEST(Reaction, Names) {
  EXPECT_EQ(parse_reaction("logistic"), Reaction::logistic);
  EXPECT_EQ(parse_reaction("kpp_cut"), Reaction::kpp_cut);
  EXPECT_EQ(to_string(Reaction::kpp_cut), "kpp_cut");
  EXPECT_THROW(parse_reaction("fisher"), ConfigurationError);
}

TEST(Step, CflLimitEnforced) {
  auto s = step_profile(0.05, 100);
  EXPECT_DOUBLE_EQ(pde_cfl_limit(0.05), 0.002);
  EXPECT_THROW(step_pde(s, Environment::constant(1.0), 1.0, Reaction::logistic, 0.0021), ConfigurationError);
  EXPECT_NO_THROW(step_pde(s, Environment::constant(1.0), 1.0, Reaction::logistic, 0.002));
}

TEST(Step, ValuesStayInUnitIntervalProperty) {
  for (auto reaction : {Reaction::logistic, Reaction::kpp_cut}) {
    auto s = step_profile(0.05, 400);
    const auto env = Environment::periodic_piecewise(1.0, 3.0, 0.1);
    for (int k = 0; k < 2000; ++k) {
      step_pde(s, env, 0.2, reaction, 0.002);
      for (double v : s.u) {
        ASSERT_GE(v, 0.0);
        ASSERT_LE(v, 1.0);
      }
    }
    EXPECT_EQ(s.u.front(), 1.0);
    EXPECT_EQ(s.u.back(), 0.0);
  }
}

TEST(Step, PureDiffusionConservesMassAwayFromBoundaries) {
  PdeState s;
  s.hx = 0.1;
  s.x0 = -10.0;
  s.left_value = 0.0;
  s.u.assign(201, 0.0);
  s.u[100] = 1.0;
  double before = 0.0;
  for (double v : s.u) before += v;
  // Growth r = 1 adds u dt per step; compare with the linear prediction.
  const double dt = 0.001;
  for (int k = 0; k < 100; ++k) step_pde(s, Environment::constant(1.0), 1.0, Reaction::kpp_cut, dt);
  double after = 0.0;
  for (double v : s.u) after += v;
  EXPECT_NEAR(after / before, std::pow(1.0 + dt, 100), 1e-9);
}

TEST(Front, LinearInterpolation) {
  PdeState s;
  s.hx = 1.0;
  s.u = {1.0, 0.8, 0.4, 0.0};
  EXPECT_NEAR(front_position(s, 0.6), 1.5, 1e-14);
  EXPECT_NEAR(front_position(s, 0.1), 2.75, 1e-14);
  EXPECT_THROW(front_position(s, 1.5), WindowFault);
  s.u = {1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(front_position(s, 0.5), WindowFault);
}

TEST(Run, LogisticFrontSpeedNearKpp) {
  PdeOptions o;
  o.half_level = true;
  const auto t = run_pde(Environment::constant(1.0), 1.0, 1e6, Reaction::logistic, 60.0, o);
  const double slope = estimate_speed(t, 0.5).slope;
  EXPECT_NEAR(slope, std::sqrt(2.0), 0.03 * std::sqrt(2.0));
  EXPECT_LT(slope, std::sqrt(2.0) * 1.005);
}

TEST(Run, TraceIsRescaled) {
  PdeOptions o;
  o.record_dt = 0.5;
  const auto t = run_pde(Environment::constant(1.0), 0.5, 100.0, Reaction::kpp_cut, 10.0, o);
  ASSERT_GE(t.size(), 20u);
  EXPECT_NEAR(t.times.back(), 5.0, 1e-9);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_GT(t.times[i], t.times[i - 1]);
  // The 1/K level runs ahead of the 1/2 level.
  o.half_level = true;
  const auto half = run_pde(Environment::constant(1.0), 0.5, 100.0, Reaction::kpp_cut, 10.0, o);
  EXPECT_GT(t.positions.back(), half.positions.back());
}

}  // namespace
