// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria (0 when all pass). Criterion numbers given as arguments
// restrict the run to those criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "frontlab/app/config.hpp"
#include "frontlab/app/runner.hpp"
#include "frontlab/app/suites.hpp"
#include "frontlab/env.hpp"
#include "frontlab/kernel.hpp"
#include "frontlab/ode.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/sim.hpp"
#include "frontlab/speeds.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace frontlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::size_t max_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  if (v.size() > 1) m.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  return m;
}

std::string item_line(const CheckItem& it) {
  std::ostringstream s;
  s << it.name << " observed=" << it.observed << " bound=" << it.bound << " sigma=" << it.sigma;
  return s.str();
}

// 1. Pathwise domination of the coupled pairs.
Outcome c1_coupling() {
  EngineConfig base;
  base.dt = 0.01;
  base.dx = 0.05;
  base.horizon = 500;
  base.record_every = 500;
  base.initial = PopulationState::single(0, 3);

  std::vector<std::pair<std::string, std::pair<EngineConfig, EngineConfig>>> pairs;
  {
    EngineConfig a = base, b = base;
    a.env = b.env = Environment::constant(1.5);
    b.K = 5;
    pairs.push_back({"untruncated/truncated", {a, b}});
  }
  {
    EngineConfig a = base, b = base;
    a.env = Environment::constant(3.0);
    b.env = Environment::periodic_piecewise(1.0, 2.5, 0.5);
    a.K = b.K = 10;
    pairs.push_back({"rate-ordered", {a, b}});
  }
  {
    EngineConfig a = base;
    a.env = Environment::periodic_piecewise(1.0, 3.0, 0.1);
    a.K = 20;
    pairs.push_back({"identical", {a, a}});
  }
  std::size_t runs = 0, violations = 0, identical_mismatch = 0;
  std::ostringstream d;
  for (auto& [name, pair] : pairs) {
    std::size_t v = 0;
    for (std::uint32_t seed = 1; seed <= 200; ++seed) {
      EngineConfig a = pair.first, b = pair.second;
      a.seed = b.seed = seed;
      const auto r = run_coupled_pair(a, b);
      ++runs;
      v += r.violations;
      if (name == "identical" && r.first.positions.back() != r.second.positions.back()) ++identical_mismatch;
    }
    violations += v;
    d << name << ": " << v << " violations; ";
  }
  d << runs << " coupled runs of 500 generations, identical-pair front mismatches " << identical_mismatch;
  return {violations == 0 && identical_mismatch == 0, d.str()};
}

// 2. Rate-function bracketing and the speed root.
Outcome c2_rate_function() {
  const double dt = 0.1, dx = 1e-3;
  const auto report = check_appendixA(dt, dx);
  std::size_t trials = 0;
  for (const auto& it : report.items) trials += it.trials;
  const double c = solve_speed(1.1, dt, dx);
  const double a = 16.0 / std::sqrt(kGamma) * std::sqrt(1.0 / 1.0);
  const double printed = 0.138155;
  const double gaussian = std::sqrt(2.0 * dt * std::log(1.1));
  const bool ok = report.passed() && std::fabs(c - printed) <= a * dx && std::fabs(c - gaussian) <= a * dx;
  std::ostringstream d;
  d.precision(10);
  d << "bracketing " << (report.passed() ? "held" : "FAILED") << " over " << trials << " evaluations; solve_speed(1.1)="
    << c << ", |c-0.138155|=" << std::fabs(c - printed) << ", |c-sqrt(2 dt log 1.1)|=" << std::fabs(c - gaussian)
    << " (Gaussian " << gaussian << "), a*dx=" << a * dx;
  return {ok, d.str()};
}

// 3. Speed of the mean rightmost position of the untruncated walk.
Outcome c3_biggins() {
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.005;
  c.seed = 3;
  c.prune_depth = 10.0;
  c.dense_threshold = 64;
  const std::int64_t N = 2000;
  const std::size_t reps = 100;
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  // Per-replicate OLS slope over n in [N/2, N]; the mean of these equals the slope of the mean curve.
  const auto slopes = parallel_map(reps, max_threads(), [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    ParticleEngine engine(e, law);
    std::vector<double> n, m;
    while (engine.generation() < N) {
      engine.step();
      if (engine.generation() >= N / 2) {
        n.push_back(static_cast<double>(engine.generation()));
        m.push_back(static_cast<double>(engine.rightmost_site()) * e.dx);
      }
    }
    return fit_line(n, m).slope;
  });
  const auto s = moments(slopes);
  const double target = solve_speed(1.1, c.dt, c.dx);
  const double rel = (s.mean - target) / target;
  std::ostringstream d;
  d.precision(6);
  d << "slope " << s.mean << " +- " << s.se << " vs solve_speed(1.1)=" << target << ", relative "
    << 100.0 * rel << "% (tolerance 5%), " << (s.mean - target) / s.se << " sigma; prune depth 10, dense threshold 64";
  return {std::fabs(rel) <= 0.05, d.str()};
}

Outcome from_suite(const std::string& name, const std::vector<std::string>& items) {
  app::SuiteOptions o;
  o.threads = max_threads();
  const auto report = app::run_property_suite(name, o);
  bool ok = true;
  std::ostringstream d;
  for (const auto& it : report.items) {
    if (std::find(items.begin(), items.end(), it.name) == items.end()) continue;
    ok = ok && it.passed();
    d << item_line(it) << "; ";
  }
  return {ok, d.str()};
}

// 4. Tail bound on the rightmost particle, A in {1, 2}, 1e4 replicates.
Outcome c4_tail() { return from_suite("tail_bound", {"exceedance_A1", "exceedance_A2"}); }

// 5. Capacity exceedance of the rebooted blocks, 4e5 blocks.
Outcome c5_reboot() { return from_suite("reboot_bounds", {"capacity_exceedance"}); }

// 6. Euler error and perturbation bounds.
Outcome c6_ode() {
  const double L = 1.0 / std::sqrt(2.0);
  const auto env = Environment::smooth([](double, double x) { return 2.0 + std::sin(x); }, 1.0, 3.0, L);
  const double T = 1.0, h = 1e-3;
  const double err = std::fabs(euler_endpoint(env, 0.0, T, h) - euler_endpoint(env, 0.0, T, 1e-6));
  const double bound = std::exp(L * T) * h / 2.0;
  const auto st = check_stability(env, 0.05, T);
  const double pbound = 0.05 * (T + 1.0) * std::exp(L * T);
  std::ostringstream d;
  d << "error " << err << " <= " << bound << "; perturbation gap " << st.sup_gap << " <= " << pbound;
  return {err <= bound && st.sup_gap <= pbound && std::fabs(st.bound - pbound) < 1e-15, d.str()};
}

// 7. Harmonic-mean speed of the periodic ODE.
Outcome c7_harmonic() {
  const double v = periodic_limit_speed_empirical(Environment::periodic_piecewise(1.0, 3.0, 0.1), 200.0, 1e-4);
  const double rel = std::fabs(v - 0.75631) / 0.75631;
  std::ostringstream d;
  d.precision(8);
  d << "x(200)/200 = " << v << ", relative gap to 0.75631 " << 100.0 * rel << "% (tolerance 0.5%), closed form "
    << c_ode(3.0, 0.1);
  return {rel <= 0.005, d.str()};
}

// 8. Logistic PDE front speed.
Outcome c8_kpp() {
  PdeOptions o;
  o.hx = 0.05;
  o.half_level = true;
  const auto trace = run_pde(Environment::constant(1.0), 1.0, 1e6, Reaction::logistic, 100.0, o);
  const double slope = estimate_speed(trace, 0.5).slope;
  const double rel = std::fabs(slope - std::sqrt(2.0)) / std::sqrt(2.0);
  std::ostringstream d;
  d.precision(6);
  d << "half-level front slope " << slope << " vs sqrt(2), relative gap " << 100.0 * rel << "% (tolerance 3%)";
  return {rel <= 0.03, d.str()};
}

// 9. Particle ladders in eps and K.
Outcome c9_ladders() {
  ComparisonSettings s;
  s.threads = max_threads();
  const auto r = compare_engines(s);
  std::ostringstream d;
  d.precision(4);
  d << "eps ladder (K=1000):";
  for (const auto& c : r.eps_cells) d << " eps=" << c.eps << ": " << c.mean << "+-" << c.stderr_;
  d << " [" << (r.eps_trend.passed() ? "decreasing toward band" : "FAILED") << "; " << r.eps_trend.detail << "]";
  d << "; K ladder (eps=0.1):";
  for (const auto& c : r.K_cells) d << " K=" << c.K << ": " << c.mean << "+-" << c.stderr_;
  d << " [" << (r.K_trend.passed() ? "increasing above band" : "FAILED") << "; " << r.K_trend.detail << "]";
  return {r.eps_trend.passed() && r.K_trend.passed(), d.str()};
}

// 10. Speed ordering chain, homogeneous collapse and the reported discrepancy.
Outcome c10_speeds() {
  std::mt19937_64 gen(1010);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::size_t ordered = 0;
  for (int i = 0; i < 20; ++i) {
    const double a = u(gen), b = u(gen);
    if (speed_report(std::max(a, b), std::min(a, b)).ordering_holds) ++ordered;
  }
  double collapse = 0.0;
  for (double mu : {0.1, 0.5, 1.0, 3.0, 7.5}) {
    collapse = std::max(collapse, std::fabs(c_ode(mu, mu) - std::sqrt(2.0 * mu)));
    collapse = std::max(collapse, std::fabs(c_star0(mu, mu) - std::sqrt(2.0 * mu)));
  }
  const auto text = speed_report(3.0, 0.1).text();
  const auto at = text.find("1.901 vs formula ~1.8396");
  std::string line;
  if (at != std::string::npos) {
    const auto begin = text.rfind('\n', at) + 1;
    line = text.substr(begin, text.find('\n', at) - begin);
  }
  std::ostringstream d;
  d << ordered << "/20 pairs ordered; collapse error " << collapse << "; report line: \"" << line << "\"";
  return {ordered == 20 && collapse <= 1e-10 && at != std::string::npos, d.str()};
}

// 11. Many-to-one identity against an independent random-walk sampler.
Outcome c11_many_to_one() {
  EngineConfig c;
  c.env = Environment::constant(1.0);
  c.dt = 0.1;
  c.dx = 0.01;
  c.seed = 1111;
  const int n = 10;
  const double a = 0.2;
  const std::size_t reps = 100000;
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  const auto counts = parallel_map(reps, max_threads(), [&](std::size_t i) {
    EngineConfig e = c;
    e.replicate = static_cast<std::uint32_t>(i);
    ParticleEngine engine(e, law);
    for (int k = 0; k < n; ++k) engine.step();
    return static_cast<double>(engine.state().count_above(a, c.dx));
  });
  std::mt19937_64 gen(424242);
  std::vector<double> walk(reps);
  for (auto& w : walk) {
    std::int64_t site = 0;
    for (int k = 0; k < n; ++k) site += oracle::lattice_gaussian_step(gen, c.dt, c.dx);
    w = static_cast<double>(site) * c.dx > a ? 1.0 : 0.0;
  }
  const auto lhs = moments(counts);
  const auto p = moments(walk);
  const double m = std::pow(1.1, n);
  const double diff = lhs.mean - m * p.mean;
  const double se = std::hypot(lhs.se, m * p.se);
  std::ostringstream d;
  d.precision(6);
  d << "engine mean " << lhs.mean << " vs 1.1^10 * P(Z>a) = " << m * p.mean << ", difference " << diff / se
    << " sigma (tolerance 3)";
  return {std::fabs(diff) <= 3.0 * se, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 12. Byte-identical CSVs across thread counts and when rerun from the manifest.
Outcome c12_determinism() {
  const std::vector<std::string> configs = {
      R"({"kind": "particle", "seed": 12, "replicates": 6,
          "environment": {"type": "periodic", "mu_plus": 3.0, "mu_minus": 0.1},
          "dt": 0.02, "dx": 0.05, "eps": 0.2, "K": 1000, "T": 2.0,
          "initial": {"type": "half_line", "count": 1, "extent": 20.0},
          "record_every": 10, "prune_depth": 20.0, "dense_threshold": 64})",
      R"({"kind": "rebooted", "seed": 12, "replicates": 4,
          "environment": {"type": "constant", "r": 1.0},
          "dt": 0.1, "dx": 0.02, "eps": 1.0, "K": 10000, "T": 300.0,
          "initial": {"type": "single", "count": 1}, "record_every": 9})",
      R"({"kind": "coupled", "seed": 12, "replicates": 4,
          "environment": {"type": "constant", "r": 2.0},
          "dt": 0.05, "dx": 0.05, "eps": 1.0, "K": "inf", "T": 10.0,
          "initial": {"type": "single", "count": 2},
          "second": {"K": 20, "environment": {"type": "constant", "r": 1.0}}})"};
  const auto root = fs::temp_directory_path() / ("frontlab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::size_t> threads = {1, 4, max_threads()};
  std::size_t compared = 0, mismatched = 0;
  for (std::size_t k = 0; k < configs.size(); ++k) {
    const auto cfg = app::parse_config(configs[k]);
    std::vector<app::RunResult> runs;
    for (std::size_t t : threads) {
      app::RunOptions o;
      o.threads = t;
      o.output_dir = root / ("c" + std::to_string(k) + "_t" + std::to_string(t));
      runs.push_back(app::run_experiment(cfg, o));
    }
    app::RunOptions o;
    o.threads = max_threads();
    o.output_dir = root / ("c" + std::to_string(k) + "_manifest");
    runs.push_back(app::run_experiment(app::load_config((runs.front().directory / "manifest.json").string()), o));
    for (const auto& f : runs.front().files) {
      const auto ref = slurp(runs.front().directory / f);
      for (std::size_t i = 1; i < runs.size(); ++i) {
        ++compared;
        if (runs[i].files != runs.front().files || slurp(runs[i].directory / f) != ref) ++mismatched;
      }
    }
  }
  fs::remove_all(root);
  std::ostringstream d;
  d << compared << " file comparisons over particle, rebooted and coupled runs (threads 1, 4, " << max_threads()
    << ", rerun from manifest), " << mismatched << " mismatches";
  return {compared > 0 && mismatched == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coupling exactness", c1_coupling},
      {"rate-function oracle", c2_rate_function},
      {"branching random walk speed", c3_biggins},
      {"tail bound", c4_tail},
      {"reboot capacity bound", c5_reboot},
      {"ODE error bounds", c6_ode},
      {"harmonic-mean speed", c7_harmonic},
      {"KPP front speed", c8_kpp},
      {"double-limit trends", c9_ladders},
      {"speed ordering", c10_speeds},
      {"many-to-one", c11_many_to_one},
      {"determinism", c12_determinism},
  };
  std::vector<bool> selected(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    const int k = std::atoi(argv[a]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion '" << argv[a] << "'\n";
      return 64;
    }
    selected[static_cast<std::size_t>(k - 1)] = true;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << fmt("%.1f", secs) << " s)  " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed;
}
