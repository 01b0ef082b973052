// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/app/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "frontlab/env.hpp"
#include "frontlab/error.hpp"
#include "frontlab/kernel.hpp"
#include "frontlab/ode.hpp"
#include "frontlab/offspring.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/random.hpp"
#include "frontlab/sim.hpp"
#include "frontlab/speeds.hpp"

namespace frontlab::app {
namespace {

std::size_t scaled(double n, const SuiteOptions& o, std::size_t minimum = 2) {
  return std::max<std::size_t>(minimum, static_cast<std::size_t>(std::llround(n * o.scale)));
}

/// Mean and standard error of a sample.
struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return m;
}

/// Standard error of a frequency, floored at one event so zero counts are not exact.
double frequency_se(double hits, double trials) {
  const double p = std::max(hits, 1.0) / trials;
  return std::sqrt(p * (1.0 - p) / trials);
}

std::string where(const std::string& what, double value) {
  std::ostringstream s;
  s.precision(10);
  s << what << " = " << value;
  return s.str();
}

CheckReport suite_appendixA(const SuiteOptions&) {
  CheckReport out;
  out.suite = "appendixA";
  for (double dx : {1e-2, 1e-3}) {
    const auto r = check_appendixA(0.1, dx);
    for (auto item : r.items) {
      item.name += dx == 1e-2 ? " [dx=1e-2]" : " [dx=1e-3]";
      out.items.push_back(item);
    }
  }
  return out;
}

CheckReport suite_offspring(const SuiteOptions&) {
  auto r = check_assumptions(OffspringFamily::bernoulli_duplication());
  r.suite = "offspring";
  return r;
}

CheckReport suite_env(const SuiteOptions&) {
  CheckReport out;
  out.suite = "env";
  SampleGrid grid;
  grid.nt = grid.nx = 300;
  const auto c = validate(Environment::constant(1.0), grid);
  out.item("constant_within_bounds").record(c.ok(), 0.0, c.note);
  const auto s = validate(
      Environment::smooth([](double, double x) { return 2.0 + std::sin(x); }, 1.0, 3.0, 1.0 / std::sqrt(2.0)),
      grid);
  out.item("sinusoid_within_bounds_and_lipschitz").record(s.ok(), 0.0, s.note);
  const auto p = validate(Environment::periodic_piecewise(1.0, 3.0, 0.1), grid);
  out.item("periodic_flagged_discontinuous").record(!p.c1_hypothesis_met, 0.0, p.note);
  return out;
}

/// The three coupled pairs: truncated against untruncated, ordered rates, identical.
std::vector<std::pair<EngineConfig, EngineConfig>> coupling_pairs(std::uint64_t seed) {
  EngineConfig base;
  base.dt = 0.01;
  base.dx = 0.05;
  base.horizon = 500;
  base.seed = seed;
  base.record_every = 1;
  std::vector<std::pair<EngineConfig, EngineConfig>> pairs;
  EngineConfig a = base, b = base;
  a.env = b.env = Environment::constant(1.0);
  a.K = kUnbounded;
  b.K = 50;
  pairs.emplace_back(a, b);
  a = base;
  b = base;
  a.env = Environment::constant(2.0);
  b.env = Environment::constant(1.0);
  pairs.emplace_back(a, b);
  a = base;
  a.env = Environment::constant(1.0);
  a.K = 50;
  pairs.emplace_back(a, a);
  return pairs;
}

CheckReport suite_coupling(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "coupling";
  const char* names[] = {"untruncated_dominates_truncated", "higher_rate_dominates", "identical_pair_equal"};
  const std::size_t seeds = scaled(200, o, 1);
  const auto pairs = coupling_pairs(o.seed);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto results = parallel_map(seeds, o.threads, [&](std::size_t s) {
      auto [a, b] = pairs[p];
      a.replicate = b.replicate = static_cast<std::uint32_t>(s);
      const auto r = run_coupled_pair(a, b);
      bool front_ok = true;
      for (std::size_t i = 0; i < r.first.size(); ++i) {
        if (r.first.positions[i] < r.second.positions[i]) front_ok = false;
      }
      const bool identical = p != 2 || (r.first.positions == r.second.positions);
      return std::make_tuple(r.violations, front_ok, identical);
    });
    auto& item = out.item(names[p]);
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto& [violations, front_ok, identical] = results[s];
      const bool ok = violations == 0 && front_ok && identical;
      item.record(ok, -static_cast<double>(violations), where("replicate", static_cast<double>(s)));
    }
  }
  return out;
}

double tail_h(double r_inf, double dt, double eta) {
  const double q = std::exp(-kGamma * r_inf * dt * eta / 8.0);
  return q / (1.0 - q);
}

CheckReport suite_tail_bound(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "tail_bound";
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.02;
  c.seed = o.seed;
  c.horizon = 200;
  c.prune_depth = 10.0;
  c.dense_threshold = 64;
  const double cbar = solve_speed(1.1, c.dt, c.dx);
  const double eta = 0.25;
  const std::size_t reps = scaled(1e4, o);
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  // Largest excess of M_n - (1 + eta) n cbar over n <= N, per replicate.
  const auto excess = parallel_map(reps, o.threads, [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    ParticleEngine engine(e, law);
    double worst = -1e300;
    while (engine.generation() < e.horizon) {
      engine.step();
      const double n = static_cast<double>(engine.generation());
      worst = std::max(worst, static_cast<double>(engine.rightmost_site()) * e.dx - (1.0 + eta) * n * cbar);
    }
    return worst;
  });
  for (double A : {1.0, 2.0}) {
    const double hits = static_cast<double>(std::count_if(excess.begin(), excess.end(), [A](double x) { return x > A; }));
    const double freq = hits / static_cast<double>(reps);
    out.item(A == 1.0 ? "exceedance_A1" : "exceedance_A2")
        .compare_upper(freq, tail_bound(1.0, c.dt, eta, A), frequency_se(hits, static_cast<double>(reps)));
  }
  return out;
}

CheckReport suite_reboot_bounds(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "reboot_bounds";
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.02;
  c.K = 10000;
  c.seed = o.seed;
  c.record_every = 1'000'000;
  const std::int64_t period = reboot_period(c.K);
  const std::size_t chunks = 40;
  const std::size_t blocks_per_chunk = scaled(1e4, o, 1);
  c.horizon = period * static_cast<std::int64_t>(blocks_per_chunk);
  const auto results = parallel_map(chunks, o.threads, [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    return run_rebooted(e, period);
  });
  double blocks = 0.0, hits = 0.0;
  std::vector<double> drift;
  for (const auto& r : results) {
    blocks += static_cast<double>(r.blocks);
    hits += static_cast<double>(r.capacity_hits);
    for (auto d : r.block_drift) drift.push_back(static_cast<double>(d) * c.dx / static_cast<double>(period));
  }
  out.item("capacity_exceedance").compare_upper(hits / blocks, capacity_bound(c.K, 1.0, c.dt), frequency_se(hits, blocks));
  const double cbar = solve_speed(1.1, c.dt, c.dx);
  const auto m = moments(drift);
  out.item("block_drift_upper").compare_upper(m.mean, 1.1 * cbar, m.se);
  return out;
}

CheckReport suite_stopping(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "stopping";
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.02;
  c.K = 10000;
  c.seed = o.seed;
  const double eps = 1e-4;
  const std::int64_t horizon = reboot_period(c.K);
  const std::size_t reps = scaled(1e5, o);
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  const auto obs = parallel_map(reps, o.threads, [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    const auto s = observe_stopping(e, eps, horizon);
    return std::make_pair(s.tau_capacity.has_value(), s.tau_escape.has_value());
  });
  double cap = 0.0, esc = 0.0;
  for (const auto& [a, b] : obs) {
    cap += a;
    esc += b;
  }
  const double n = static_cast<double>(reps);
  out.item("tau_capacity").compare_upper(cap / n, capacity_bound(c.K, 1.0, c.dt), frequency_se(cap, n));
  out.item("tau_escape")
      .compare_upper(esc / n, escape_bound(1.0, escape_radius(eps) / static_cast<double>(horizon)), frequency_se(esc, n));
  return out;
}

/// Sum of n rounded Gaussian steps, drawn with Box-Muller on the walk stream.
std::int64_t rounded_gaussian_walk(rng::CounterStream& s, int n, double dt, double dx) {
  std::int64_t site = 0;
  for (int k = 0; k < n; ++k) {
    const double u1 = s.uniform(), u2 = s.uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    site += static_cast<std::int64_t>(std::floor(z * std::sqrt(dt) / dx + 0.5));
  }
  return site;
}

CheckReport suite_many_to_one(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "many_to_one";
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.01;
  c.seed = o.seed;
  const int n = 10;
  const double a = 0.2;
  const std::size_t reps = scaled(1e5, o);
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  const auto counts = parallel_map(reps, o.threads, [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    ParticleEngine engine(e, law);
    for (int k = 0; k < n; ++k) engine.step();
    return static_cast<double>(engine.state().count_above(a, c.dx));
  });
  std::vector<double> walk(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    rng::CounterStream s(o.seed, static_cast<std::uint32_t>(i), 0, 0, rng::Purpose::walk);
    walk[i] = static_cast<double>(rounded_gaussian_walk(s, n, c.dt, c.dx)) * c.dx > a ? 1.0 : 0.0;
  }
  const auto lhs = moments(counts);
  const auto p = moments(walk);
  const double m = std::pow(1.1, n);
  const double diff = lhs.mean - m * p.mean;
  const double se = std::hypot(lhs.se, m * p.se);
  auto& item = out.item("engine_vs_random_walk");
  item.observed = lhs.mean;
  item.bound = m * p.mean;
  item.sigma = se;
  item.record(std::fabs(diff) <= 3.0 * se, 3.0 * se - std::fabs(diff), where("difference", diff));
  return out;
}

CheckReport suite_second_moment(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "second_moment";
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.01;
  c.seed = o.seed;
  c.horizon = 1000;
  c.prune_depth = 10.0;
  c.dense_threshold = 64;
  const std::size_t reps = scaled(20, o);
  const double cspeed = solve_speed(1.1, c.dt, c.dx);
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  const auto sq = parallel_map(reps, o.threads, [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    ParticleEngine engine(e, law);
    while (engine.generation() < e.horizon) engine.step();
    const double mn = static_cast<double>(engine.rightmost_site()) * c.dx / static_cast<double>(c.horizon);
    return mn * mn;
  });
  const auto m = moments(sq);
  out.item("second_moment_n1000").compare_upper(m.mean, std::pow(1.2 * cspeed, 2), m.se);
  return out;
}

CheckReport suite_ode(const SuiteOptions&) {
  CheckReport out;
  out.suite = "ode";
  const auto env =
      Environment::smooth([](double, double x) { return 2.0 + std::sin(x); }, 1.0, 3.0, 1.0 / std::sqrt(2.0));
  const double reference = euler_endpoint(env, 0.0, 1.0, 1e-6);
  const double coarse = euler_endpoint(env, 0.0, 1.0, 1e-3);
  const double err = std::fabs(coarse - reference);
  const double bound = euler_error_bound(env, 1.0, 1e-3);
  out.item("euler_error_bound").record(err <= bound, bound - err, where("error", err));
  const auto st = check_stability(env, 0.05, 1.0, 1e-4);
  out.item("perturbation_bound").record(st.passed, st.bound - st.sup_gap, where("gap", st.sup_gap));
  const double v = periodic_limit_speed_empirical(Environment::periodic_piecewise(1.0, 3.0, 0.1), 200.0, 1e-4);
  const double target = c_ode(3.0, 0.1);
  out.item("harmonic_mean_speed")
      .record(std::fabs(v - target) <= 0.005 * target, 0.005 * target - std::fabs(v - target), where("speed", v));
  return out;
}

CheckReport suite_pde(const SuiteOptions&) {
  CheckReport out;
  out.suite = "pde";
  PdeOptions opts;
  opts.half_level = true;
  const auto t = run_pde(Environment::constant(1.0), 1.0, 1e6, Reaction::logistic, 100.0, opts);
  const double slope = estimate_speed(t, 0.5).slope;
  const double target = std::sqrt(2.0);
  out.item("logistic_front_speed")
      .record(std::fabs(slope - target) <= 0.03 * target, 0.03 * target - std::fabs(slope - target),
              where("slope", slope));
  return out;
}

CheckReport suite_speeds(const SuiteOptions& o) {
  CheckReport out;
  out.suite = "speeds";
  rng::CounterStream s(o.seed, 0, 0, 0, rng::Purpose::auxiliary);
  auto& chain = out.item("ordering_chain");
  for (int i = 0; i < 20; ++i) {
    const double u = 0.05 + 5.0 * s.uniform();
    const double v = 0.05 + 5.0 * s.uniform();
    const double a = std::max(u, v);
    const double b = u == v ? 0.5 * u : std::min(u, v);
    const auto r = speed_report(a, b);
    const double slack = std::min(r.homogenized - r.ode, r.star0 - r.homogenized);
    chain.record(r.ordering_holds, slack, where("mu_plus", a) + ", " + where("mu_minus", b));
  }
  auto& collapse = out.item("homogeneous_collapse");
  for (double mu : {0.1, 0.5, 1.0, 2.0, 3.0, 7.5}) {
    const double dev = std::fabs(c_star0(mu, mu) - std::sqrt(2.0 * mu));
    collapse.record(dev <= 1e-10, 1e-10 - dev, where("mu", mu));
  }
  return out;
}

using SuiteFn = CheckReport (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"appendixA", suite_appendixA},       {"offspring", suite_offspring},
      {"env", suite_env},                   {"coupling", suite_coupling},
      {"many_to_one", suite_many_to_one},   {"tail_bound", suite_tail_bound},
      {"reboot_bounds", suite_reboot_bounds}, {"stopping", suite_stopping},
      {"second_moment", suite_second_moment}, {"ode", suite_ode},
      {"pde", suite_pde},                   {"speeds", suite_speeds},
  };
  return suites;
}

}  // namespace

double tail_bound(double r_inf, double dt, double eta, double A) {
  return tail_h(r_inf, dt, eta) * std::exp(-std::sqrt(2.0 * kGamma * r_inf) / 8.0 * A);
}

double capacity_bound(std::uint64_t K, double r_sup, double dt) {
  return std::pow(static_cast<double>(K), std::log1p(r_sup * dt) - 1.0);
}

double escape_bound(double r_sup, double x) {
  const double q = std::exp(-kGamma * std::sqrt(r_sup) / (4.0 * std::sqrt(2.0)) * x);
  return 2.0 * q / (1.0 - q);
}

nlohmann::ordered_json report_to_json(const CheckReport& report) {
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& i : report.items) {
    nlohmann::ordered_json item;
    item["name"] = i.name;
    item["passed"] = i.passed();
    item["trials"] = i.trials;
    item["failures"] = i.failures;
    item["worst_margin"] = num(i.worst_margin);
    item["observed"] = num(i.observed);
    item["bound"] = num(i.bound);
    item["sigma"] = num(i.sigma);
    item["sigmas_above_bound"] =
        num(i.sigma > 0.0 ? (i.observed - i.bound) / i.sigma : std::numeric_limits<double>::quiet_NaN());
    item["first_failure"] = i.detail;
    j["items"].push_back(item);
  }
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

CheckReport run_property_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, f] : registry()) {
    if (n == name) return f(options);
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigurationError("unknown suite '" + name + "' (" + known + ")");
}

}  // namespace frontlab::app
