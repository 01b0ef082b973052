// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "frontlab/env.hpp"
#include "frontlab/population.hpp"

namespace frontlab {

/// Forward Euler path of x' = sqrt(2 r(t, x)) + delta on the grid 0, h, ..., T.
struct OdePath {
  std::vector<double> times;
  std::vector<double> values;
  double h = 0.0;
  double delta = 0.0;
};

/// The environment is evaluated at (t, x) directly; callers pass a field that is
/// already in macroscopic coordinates.
OdePath solve_euler(const Environment& env, double x0, double T, double h, double delta = 0.0);
/// Endpoint only, without storing the path.
double euler_endpoint(const Environment& env, double x0, double T, double h, double delta = 0.0);

/// e^{LT} h / 2 with L = env.lipschitz_L().
double euler_error_bound(const Environment& env, double T, double h);
/// delta (T + 1) e^{LT}.
double perturbation_bound(const Environment& env, double delta, double T);

struct StabilityCheck {
  double sup_gap = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Compares the delta-perturbed path with the unperturbed one on the same grid.
StabilityCheck check_stability(const Environment& env, double delta, double T, double h = 1e-4,
                               double x0 = 0.0);

/// x(T) / T from x(0) = 0.
double periodic_limit_speed_empirical(const Environment& env, double T, double h);

/// Rescaled trace of the Euler path, sampled every `every` steps.
FrontTrace ode_trace(const Environment& env, double T, double h, std::int64_t every = 1);

}  // namespace frontlab
