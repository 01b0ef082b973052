// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

Reaction parse_reaction(const std::string& name) {
  if (name == "kpp_cut") return Reaction::kpp_cut;
  if (name == "logistic") return Reaction::logistic;
  throw ConfigurationError("pde: unknown reaction '" + name + "' (expected kpp_cut or logistic)");
}

std::string to_string(Reaction reaction) {
  return reaction == Reaction::kpp_cut ? "kpp_cut" : "logistic";
}

double pde_cfl_limit(double hx) { return 0.8 * hx * hx; }

void step_pde(PdeState& s, const Environment& env, double eps, Reaction reaction, double dt) {
  const std::size_t n = s.u.size();
  if (n < 3) throw ConfigurationError("pde: need at least 3 grid points");
  if (!(dt > 0.0) || dt > pde_cfl_limit(s.hx) * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "pde: dt = " << dt << " violates the CFL limit " << pde_cfl_limit(s.hx);
    throw ConfigurationError(msg.str());
  }
  const double nu = 0.5 * dt / (s.hx * s.hx);
  const double te = eps * s.t;
  std::vector<double> out(n);
  out[0] = s.left_value;
  out[n - 1] = s.right_value;
  const std::vector<double>& u = s.u;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double diffused = u[i] + nu * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
    const double r = env.evaluate(te, eps * s.x(i));
    double v;
    if (reaction == Reaction::logistic) {
      v = diffused + dt * r * u[i] * (1.0 - u[i]);
    } else {
      // The cut reaction stops at 1 instead of stepping past it.
      v = u[i] <= 1.0 ? diffused + dt * r * u[i] : diffused;
      v = std::min(v, std::max(diffused, 1.0));
    }
    if (v < -1e-9 || v > 1.0 + 1e-9) {
      std::ostringstream msg;
      msg << "pde: value " << v << " left [0, 1] at x = " << s.x(i);
      throw NumericalError(msg.str());
    }
    out[i] = std::clamp(v, 0.0, 1.0);
  }
  s.u.swap(out);
  s.t += dt;
}

double front_position(const PdeState& s, double level) {
  const std::size_t n = s.u.size();
  std::size_t i = n;
  for (std::size_t k = n; k-- > 0;) {
    if (s.u[k] > level) {
      i = k;
      break;
    }
  }
  if (i == n) throw WindowFault("pde: every value is at or below the front level");
  if (i + 1 == n) throw WindowFault("pde: front level not crossed inside the window");
  const double a = s.u[i], b = s.u[i + 1];
  return s.x(i) + s.hx * (a - level) / (a - b);
}

FrontTrace run_pde(const Environment& env, double eps, double K, Reaction reaction, double T,
                   const PdeOptions& opt) {
  if (!(K > 1.0)) throw ConfigurationError("pde: K must exceed 1");
  if (!(eps > 0.0)) throw ConfigurationError("pde: eps must be positive");
  const double level = opt.half_level ? 0.5 : 1.0 / K;
  const double hx = opt.hx;
  const double dt = opt.dt > 0.0 ? opt.dt : std::min(pde_cfl_limit(hx), 0.2 / env.r_sup());
  const double slowest = std::sqrt(2.0 * env.r_inf());
  const double ahead = 30.0 / slowest;
  const double behind = 10.0 + 3.0 * std::log(std::max(K, 2.0)) / slowest;

  PdeState s;
  s.hx = hx;
  s.x0 = -behind;
  const auto cells = static_cast<std::size_t>(std::ceil((behind + 2.0 * ahead) / hx)) + 1;
  s.u.assign(cells, 0.0);
  for (std::size_t i = 0; i < cells; ++i) s.u[i] = s.x(i) < 0.0 ? 1.0 : 0.0;

  FrontTrace trace;
  trace.meta.engine = "pde";
  const auto steps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
  const auto every = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(opt.record_dt / dt)));
  auto record = [&](std::int64_t k) {
    const double f = front_position(s, level);
    trace.push(k, eps * s.t, eps * f);
    return f;
  };
  record(0);
  for (std::int64_t k = 1; k <= steps; ++k) {
    const double step = k == steps ? T - dt * static_cast<double>(steps - 1) : dt;
    if (step > 0.0) step_pde(s, env, eps, reaction, step);
    if (k % every == 0 || k == steps) {
      const double f = record(k);
      // Keep at least `ahead` of space in front of the level crossing.
      const double room = s.x(s.u.size() - 1) - f;
      if (room < 1.5 * ahead) {
        const auto shift = static_cast<std::size_t>(std::ceil((2.0 * ahead - room) / hx));
        if (shift >= s.u.size()) throw WindowFault("pde: front outran the window");
        s.u.erase(s.u.begin(), s.u.begin() + static_cast<std::ptrdiff_t>(shift));
        s.u.insert(s.u.end(), shift, 0.0);
        s.x0 += hx * static_cast<double>(shift);
      }
      const auto probe = static_cast<std::size_t>(std::ceil((f + ahead - s.x0) / hx));
      if (probe < s.u.size() && s.u[probe] >= level * 1e-3) {
        throw WindowFault("pde: solution not negligible one window-length ahead of the front");
      }
    }
  }
  return trace;
}

}  // namespace frontlab
