// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/speeds.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "frontlab/env.hpp"
#include "frontlab/error.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/sim.hpp"

namespace frontlab {
namespace {

void require_pair(double mu_plus, double mu_minus) {
  if (!(mu_minus > 0.0) || !(mu_plus >= mu_minus) || !std::isfinite(mu_plus)) {
    throw ConfigurationError("speeds: need 0 < mu_minus <= mu_plus < inf");
  }
}

double star0_numerator(double a, double b, double sign) {
  const double d = std::sqrt(a * a + b * b - a * b);
  const double num = a * a + b * b + (a + sign * b) * d;
  const double den = std::pow(a + b + 2.0 * d, 1.5);
  return 2.0 * std::sqrt(2.0) * num / den;
}

}  // namespace

double c_ode(double mu_plus, double mu_minus) {
  require_pair(mu_plus, mu_minus);
  return 2.0 * std::sqrt(2.0 * mu_plus * mu_minus) / (std::sqrt(mu_minus) + std::sqrt(mu_plus));
}

double c_star0(double mu_plus, double mu_minus) {
  require_pair(mu_plus, mu_minus);
  return star0_numerator(mu_plus, mu_minus, +1.0);
}

double c_star0_literature_formula(double mu_plus, double mu_minus) {
  require_pair(mu_plus, mu_minus);
  return star0_numerator(mu_plus, mu_minus, -1.0);
}

double homogenized_speed(double mu_plus, double mu_minus) {
  require_pair(mu_plus, mu_minus);
  return std::sqrt(mu_plus + mu_minus);
}

SpeedReport speed_report(double mu_plus, double mu_minus) {
  SpeedReport r;
  r.mu_plus = mu_plus;
  r.mu_minus = mu_minus;
  r.ode = c_ode(mu_plus, mu_minus);
  r.homogenized = homogenized_speed(mu_plus, mu_minus);
  r.star0 = c_star0(mu_plus, mu_minus);
  r.star0_literature_formula = c_star0_literature_formula(mu_plus, mu_minus);
  r.ordering_holds = r.ode < r.homogenized && r.homogenized <= r.star0 * (1.0 + 1e-12);
  return r;
}

std::string SpeedReport::text() const {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "mu_plus                      " << mu_plus << '\n';
  out << "mu_minus                     " << mu_minus << '\n';
  out << "c_ode (harmonic mean)        " << ode << '\n';
  out << "sqrt(mu_plus + mu_minus)     " << homogenized << '\n';
  out << "c_star0 (variational form)   " << star0 << '\n';
  out << "ordering c_ode < sqrt(mu+ + mu-) <= c_star0: " << (ordering_holds ? "holds" : "FAILS") << '\n';
  out << "c_star0 discrepancy (unresolved ambiguity in the source): literature value "
      << kCStar0LiteratureValue << " at (3, 0.1) vs literature closed form "
      << c_star0_literature_formula(3.0, 0.1) << " (1.901 vs formula ~1.8396)\n";
  out << "literature closed form at this pair  " << star0_literature_formula << '\n';
  out << "note: replacing (mu+ - mu-) by (mu+ + mu-) in the closed form gives "
      << c_star0(3.0, 0.1) << " at (3, 0.1), which matches 1.901 and reduces to sqrt(2 mu) "
      << "for equal rates; c_star0 above uses that form\n";
  return out.str();
}

TrendVerdict decreasing_toward_band(const std::vector<LadderCell>& cells, double lo, double hi, double z) {
  TrendVerdict v;
  if (cells.size() < 2) throw ConfigurationError("trend: need at least two cells");
  std::ostringstream d;
  v.consecutive_ok = true;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const double se = std::hypot(cells[i].stderr_, cells[i + 1].stderr_);
    const double drop = cells[i].mean - cells[i + 1].mean;
    if (drop < -z * se) v.consecutive_ok = false;
    d << "step " << i << ": drop " << drop << " (z*se " << z * se << "); ";
  }
  const auto& a = cells.front();
  const auto& b = cells.back();
  v.overall_ok = a.mean - b.mean > z * std::hypot(a.stderr_, b.stderr_);
  v.band_ok = a.mean > hi && b.mean + z * b.stderr_ >= lo;
  d << "last mean " << b.mean << " +- " << z * b.stderr_ << " vs band [" << lo << ", " << hi
    << "], remaining gap " << std::max(0.0, b.mean - hi);
  v.detail = d.str();
  return v;
}

TrendVerdict increasing_above(const std::vector<LadderCell>& cells, double top, double z) {
  TrendVerdict v;
  if (cells.size() < 2) throw ConfigurationError("trend: need at least two cells");
  std::ostringstream d;
  v.consecutive_ok = true;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    const double se = std::hypot(cells[i].stderr_, cells[i + 1].stderr_);
    const double rise = cells[i + 1].mean - cells[i].mean;
    if (rise < -z * se) v.consecutive_ok = false;
    d << "step " << i << ": rise " << rise << " (z*se " << z * se << "); ";
  }
  const auto& a = cells.front();
  const auto& b = cells.back();
  v.overall_ok = b.mean - a.mean > z * std::hypot(a.stderr_, b.stderr_);
  v.band_ok = b.mean - z * b.stderr_ > top;
  d << "last mean " << b.mean << " +- " << z * b.stderr_ << " vs band top " << top;
  v.detail = d.str();
  return v;
}

LadderCell run_ladder_cell(const ComparisonSettings& s, double eps, std::uint64_t K) {
  LadderCell cell;
  cell.eps = eps;
  cell.K = K;
  const auto start = std::chrono::steady_clock::now();
  EngineConfig base;
  base.env = Environment::periodic_piecewise(s.period, s.mu_plus, s.mu_minus);
  base.dt = s.dt;
  base.dx = s.dx;
  base.eps = eps;
  base.K = K;
  base.seed = s.seed;
  base.horizon = static_cast<std::int64_t>(std::llround(s.t_end / (eps * s.dt)));
  base.record_every = std::max<std::int64_t>(1, base.horizon / 2000);
  base.prune_depth = s.prune_depth;
  const auto extent = static_cast<std::int64_t>(std::ceil(s.initial_extent / s.dx));
  base.initial = PopulationState::block(-extent, 0, 1);
  auto law = std::make_shared<const StepLaw>(s.dt, s.dx);

  struct Outcome {
    double slope = kNaN;
    std::string status = "ok";
  };
  const auto outcomes = parallel_map(s.replicates, s.threads, [&](std::size_t i) {
    Outcome o;
    EngineConfig c = base;
    c.replicate = static_cast<std::uint32_t>(i);
    try {
      ParticleEngine engine(c, law);
      FrontTrace trace;
      trace.push(0, engine.time_rescaled(), engine.front_rescaled());
      while (engine.generation() < c.horizon) {
        engine.step();
        if (engine.empty()) throw Error("population went extinct");
        if (engine.generation() % c.record_every == 0) {
          trace.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
        }
      }
      o.slope = estimate_speed(trace, s.window_fraction).slope;
    } catch (const std::exception& e) {
      o.status = std::string("error: ") + e.what();
    }
    return o;
  });

  double sum = 0.0, sum2 = 0.0;
  std::size_t n = 0;
  for (const auto& o : outcomes) {
    cell.slopes.push_back(o.slope);
    cell.status.push_back(o.status);
    if (std::isfinite(o.slope)) {
      sum += o.slope;
      sum2 += o.slope * o.slope;
      ++n;
    }
  }
  if (n >= 2) {
    cell.mean = sum / static_cast<double>(n);
    const double var = (sum2 - static_cast<double>(n) * cell.mean * cell.mean) / static_cast<double>(n - 1);
    cell.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  } else {
    cell.mean = kNaN;
    cell.stderr_ = kNaN;
  }
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

EngineComparison compare_engines(const ComparisonSettings& s) {
  EngineComparison out;
  out.ode_speed = c_ode(s.mu_plus, s.mu_minus);
  for (double eps : s.eps_ladder) out.eps_cells.push_back(run_ladder_cell(s, eps, s.K_fixed));
  for (std::uint64_t K : s.K_ladder) {
    bool reused = false;
    for (const auto& c : out.eps_cells) {
      if (c.K == K && c.eps == s.eps_fixed) {
        out.K_cells.push_back(c);
        reused = true;
      }
    }
    if (!reused) out.K_cells.push_back(run_ladder_cell(s, s.eps_fixed, K));
  }
  out.eps_trend = decreasing_toward_band(out.eps_cells, s.band_lo, s.band_hi, s.z);
  out.K_trend = increasing_above(out.K_cells, s.band_hi, s.z);
  return out;
}

}  // namespace frontlab
