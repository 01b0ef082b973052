// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frontlab/env.hpp"
#include "frontlab/population.hpp"

namespace frontlab {

/// Reaction term f in u_t = u_xx / 2 + r(eps t, eps x) f(u).
enum class Reaction {
  kpp_cut,   // f(u) = u for u <= 1, 0 above
  logistic,  // f(u) = u (1 - u)
};

Reaction parse_reaction(const std::string& name);
std::string to_string(Reaction reaction);

/// Grid values on x0 + i*hx with Dirichlet values at both ends.
struct PdeState {
  double x0 = 0.0;
  double hx = 0.05;
  double t = 0.0;
  double left_value = 1.0;
  double right_value = 0.0;
  std::vector<double> u;

  double x(std::size_t i) const { return x0 + hx * static_cast<double>(i); }
};

/// Largest admissible explicit step, 0.8 hx^2.
double pde_cfl_limit(double hx);

/// One explicit central-difference step. Throws ConfigurationError if dt breaks
/// the CFL limit and NumericalError if a value leaves [0, 1] by more than 1e-9.
void step_pde(PdeState& state, const Environment& env, double eps, Reaction reaction, double dt);

/// sup{x : u > level}, linearly interpolated. WindowFault if the level is not crossed.
double front_position(const PdeState& state, double level);

struct PdeOptions {
  double hx = 0.05;
  double dt = 0.0;            // 0 selects min(0.8 hx^2, 0.2 / r_sup)
  double record_dt = 0.1;     // unscaled time between recorded points
  bool half_level = false;    // track u = 1/2 instead of 1/K
};

/// Moving-window solve from u0 = 1{x < 0} up to unscaled time T. The trace holds
/// (eps t, eps * front) with the front at level 1/K (or 1/2).
FrontTrace run_pde(const Environment& env, double eps, double K, Reaction reaction, double T,
                   const PdeOptions& options = {});

}  // namespace frontlab
