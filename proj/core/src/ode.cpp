// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/ode.hpp"

#include <cmath>

#include "frontlab/error.hpp"

namespace frontlab {
namespace {

std::int64_t step_count(double T, double h) {
  if (!(T >= 0.0) || !(h > 0.0) || !std::isfinite(T)) {
    throw ConfigurationError("ode: need T >= 0 and h > 0");
  }
  const double ratio = T / h;
  const double rounded = std::round(ratio);
  return static_cast<std::int64_t>(std::fabs(ratio - rounded) < 1e-9 * std::max(1.0, ratio)
                                       ? rounded
                                       : std::ceil(ratio));
}

template <class Visit>
void integrate(const Environment& env, double x0, double T, double h, double delta, Visit&& visit) {
  const std::int64_t n = step_count(T, h);
  double x = x0;
  visit(0, 0.0, x);
  for (std::int64_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * h;
    const double step = (k + 1 == n) ? T - t : h;
    x += step * (std::sqrt(2.0 * env.evaluate(t, x)) + delta);
    visit(k + 1, k + 1 == n ? T : static_cast<double>(k + 1) * h, x);
  }
}

}  // namespace

OdePath solve_euler(const Environment& env, double x0, double T, double h, double delta) {
  OdePath path;
  path.h = h;
  path.delta = delta;
  const auto n = static_cast<std::size_t>(step_count(T, h)) + 1;
  path.times.reserve(n);
  path.values.reserve(n);
  integrate(env, x0, T, h, delta, [&](std::int64_t, double t, double x) {
    path.times.push_back(t);
    path.values.push_back(x);
  });
  return path;
}

double euler_endpoint(const Environment& env, double x0, double T, double h, double delta) {
  double last = x0;
  integrate(env, x0, T, h, delta, [&](std::int64_t, double, double x) { last = x; });
  return last;
}

double euler_error_bound(const Environment& env, double T, double h) {
  return std::exp(env.lipschitz_L() * T) * h / 2.0;
}

double perturbation_bound(const Environment& env, double delta, double T) {
  return delta * (T + 1.0) * std::exp(env.lipschitz_L() * T);
}

StabilityCheck check_stability(const Environment& env, double delta, double T, double h, double x0) {
  const auto base = solve_euler(env, x0, T, h, 0.0);
  const auto pert = solve_euler(env, x0, T, h, delta);
  StabilityCheck out;
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    out.sup_gap = std::max(out.sup_gap, std::fabs(pert.values[i] - base.values[i]));
  }
  out.bound = perturbation_bound(env, delta, T);
  out.passed = out.sup_gap <= out.bound;
  return out;
}

double periodic_limit_speed_empirical(const Environment& env, double T, double h) {
  if (!(T > 0.0)) throw ConfigurationError("ode: T must be positive");
  return euler_endpoint(env, 0.0, T, h) / T;
}

FrontTrace ode_trace(const Environment& env, double T, double h, std::int64_t every) {
  if (every < 1) throw ConfigurationError("ode: sampling stride must be >= 1");
  FrontTrace trace;
  trace.meta.engine = "ode";
  const std::int64_t n = step_count(T, h);
  integrate(env, 0.0, T, h, 0.0, [&](std::int64_t k, double t, double x) {
    if (k % every == 0 || k == n) trace.push(k, t, x);
  });
  return trace;
}

}  // namespace frontlab
