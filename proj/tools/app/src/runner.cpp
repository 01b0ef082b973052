// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/app/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <map>
#include <ostream>

#include "frontlab/app/output.hpp"
#include "frontlab/error.hpp"
#include "frontlab/kernel.hpp"
#include "frontlab/ode.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/sim.hpp"
#include "frontlab/speeds.hpp"

#ifndef FRONTLAB_VERSION
#define FRONTLAB_VERSION "0.0.0"
#endif

namespace frontlab::app {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

/// JSON has no infinities; they are written as strings.
ojson num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string replicate_tag(std::uint32_t r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "r%04u", r);
  return buf;
}

std::string short_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::int64_t horizon_of(double T, double eps, double dt) {
  const double g = std::round(T / (eps * dt));
  if (!(g >= 1.0) || g > 1e12) throw ConfigurationError("T / (eps dt) must give between 1 and 1e12 generations");
  return static_cast<std::int64_t>(g);
}

EngineConfig engine_config(const ExperimentConfig& c, double eps, std::uint64_t K) {
  EngineConfig e;
  e.env = c.environment.build();
  e.dt = c.dt;
  e.dx = c.dx;
  e.eps = eps;
  e.K = K;
  e.seed = c.seed;
  e.horizon = horizon_of(c.T, eps, c.dt);
  e.initial = c.initial.build(c.dx);
  e.record_every = c.record_every;
  if (c.prune_depth > 0.0) e.prune_depth = c.prune_depth;
  if (c.dense_threshold > 0) e.dense_threshold = c.dense_threshold;
  e.max_window_sites = c.max_window_sites;
  return e;
}

struct Fit {
  double slope = kNaN;
  double stderr_ = kNaN;
};

Fit fit(const FrontTrace& t, double fraction) {
  Fit f;
  try {
    const auto s = estimate_speed(t, fraction);
    f.slope = s.slope;
    f.stderr_ = s.stderr_;
  } catch (const Error&) {
  }
  return f;
}

/// Outcome of one replicate: its traces plus status and per-kind details.
struct Replicate {
  std::vector<FrontTrace> traces;
  std::string status = "ok";
  std::string message;
  ojson extra = ojson::object();
};

Replicate guarded(const std::function<void(Replicate&)>& body) {
  Replicate r;
  try {
    body(r);
  } catch (const std::exception& e) {
    r.status = "error";
    r.message = e.what();
  }
  return r;
}

struct Writer {
  fs::path dir;
  RunResult* result;
  std::vector<SummaryRow> summary;
  ojson per_replicate = ojson::array();

  void trace_file(const std::string& name, const std::vector<TraceRows>& rows) {
    write_trace_csv(dir / name, rows);
    result->files.push_back(name);
  }
};

ojson derived_constants(const ExperimentConfig& c) {
  ojson d;
  const Environment env = c.environment.build();
  d["gamma"] = kGamma;
  d["lipschitz_L"] = num(env.lipschitz_L());
  d["r_inf"] = env.r_inf();
  d["r_sup"] = env.r_sup();
  const bool lattice = c.kind == Kind::particle || c.kind == Kind::brw || c.kind == Kind::rebooted ||
                       c.kind == Kind::coupled || c.kind == Kind::figure1_panel;
  if (lattice) {
    if (c.kind != Kind::figure1_panel) d["horizon_generations"] = horizon_of(c.T, c.eps, c.dt);
    d["regime_dx_bound"] = regime_dx_bound(env.r_inf(), c.dt);
    d["sensitivity_a"] = speed_sensitivity(env.r_sup(), env.r_inf());
    if (env.r_sup() * c.dt <= 1.0) {
      RateFunction rate(c.dt, c.dx);
      d["c_bar"] = solve_speed(rate, 1.0 + env.r_sup() * c.dt) / c.dt;
      d["c_under"] = solve_speed(rate, 1.0 + env.r_inf() * c.dt) / c.dt;
      d["c_bar_gaussian"] = gaussian_speed(1.0 + env.r_sup() * c.dt, c.dt) / c.dt;
    }
  }
  if (c.environment.type == "periodic") {
    const auto s = speed_report(c.environment.mu_plus, c.environment.mu_minus);
    d["c_ode"] = s.ode;
    d["c_homogenized"] = s.homogenized;
    d["c_star0"] = s.star0;
    d["c_star0_literature_formula"] = s.star0_literature_formula;
    d["c_star0_literature_value"] = kCStar0LiteratureValue;
  }
  return d;
}

void run_particle_like(const ExperimentConfig& c, std::size_t threads, Writer& w) {
  const EngineConfig base = engine_config(c, c.eps, c.kind == Kind::brw ? kUnbounded : c.K);
  auto law = std::make_shared<const StepLaw>(c.dt, c.dx);
  const auto reps = parallel_map(c.replicates, threads, [&](std::size_t i) {
    return guarded([&](Replicate& r) {
      EngineConfig e = base;
      e.replicate = static_cast<std::uint32_t>(i);
      if (c.kind == Kind::rebooted) {
        const auto out = run_rebooted(e, c.period);
        r.traces.push_back(out.trace);
        r.extra["period"] = out.period;
        r.extra["blocks"] = out.blocks;
        r.extra["capacity_hits"] = out.capacity_hits;
        double drift = 0.0;
        for (auto d : out.block_drift) drift += static_cast<double>(d);
        r.extra["mean_block_drift"] =
            num(out.blocks ? drift * c.dx / static_cast<double>(out.blocks) / static_cast<double>(out.period) : kNaN);
        return;
      }
      ParticleEngine engine(e, law);
      FrontTrace t;
      t.meta.engine = c.kind == Kind::brw ? "brw" : "particle";
      t.meta.replicate = e.replicate;
      t.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
      try {
        while (engine.generation() < e.horizon) {
          engine.step();
          if (engine.empty()) {
            t.meta.extinct = true;
            t.meta.extinction_generation = engine.generation();
            t.push(engine.generation(), engine.time_rescaled(), kNaN);
            break;
          }
          if (engine.generation() % e.record_every == 0 || engine.generation() == e.horizon) {
            t.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
          }
        }
      } catch (const std::exception& ex) {
        // Keep the trace recorded so far.
        r.status = "error";
        r.message = ex.what();
      }
      if (t.meta.extinct) {
        r.status = "extinct";
        r.extra["extinction_generation"] = t.meta.extinction_generation;
      }
      r.traces.push_back(std::move(t));
    });
  });
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    const auto rep = static_cast<std::uint32_t>(i);
    const std::string name = "trace_" + replicate_tag(rep) + ".csv";
    std::vector<TraceRows> rows;
    for (const auto& t : r.traces) rows.push_back({rep, &t});
    w.trace_file(name, rows);
    const Fit f = r.traces.empty() ? Fit{} : fit(r.traces.front(), c.window_fraction);
    w.summary.push_back({name, rep, r.status, f.slope, f.stderr_});
    ojson entry{{"replicate", rep}, {"status", r.status}, {"file", name}};
    if (!r.message.empty()) entry["message"] = r.message;
    for (const auto& [k, v] : r.extra.items()) entry[k] = v;
    w.per_replicate.push_back(entry);
    if (r.status == "error") ++w.result->failed;
  }
}

void run_coupled(const ExperimentConfig& c, std::size_t threads, Writer& w) {
  const EngineConfig first = engine_config(c, c.eps, c.K);
  EngineConfig second = first;
  second.K = c.second_K;
  if (c.second_environment) second.env = c.second_environment->build();
  const auto reps = parallel_map(c.replicates, threads, [&](std::size_t i) {
    return guarded([&](Replicate& r) {
      EngineConfig a = first, b = second;
      a.replicate = b.replicate = static_cast<std::uint32_t>(i);
      const auto out = run_coupled_pair(a, b);
      r.traces.push_back(out.first);
      r.traces.push_back(out.second);
      r.extra["dominated"] = out.dominated;
      r.extra["violations"] = out.violations;
      r.extra["first_violation"] = out.first_violation;
      r.extra["hypothesis_checks"] = out.hypothesis_checks;
      if (!out.dominated) r.status = "violation";
    });
  });
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    const auto rep = static_cast<std::uint32_t>(i);
    ojson entry{{"replicate", rep}, {"status", r.status}};
    const char* roles[] = {"first", "second"};
    for (std::size_t p = 0; p < r.traces.size(); ++p) {
      const std::string name = std::string("trace_") + roles[p] + "_" + replicate_tag(rep) + ".csv";
      w.trace_file(name, {{rep, &r.traces[p]}});
      const Fit f = fit(r.traces[p], c.window_fraction);
      w.summary.push_back({name, rep, r.status, f.slope, f.stderr_});
      entry[std::string("file_") + roles[p]] = name;
    }
    if (r.traces.empty()) w.summary.push_back({"", rep, r.status, kNaN, kNaN});
    if (!r.message.empty()) entry["message"] = r.message;
    for (const auto& [k, v] : r.extra.items()) entry[k] = v;
    w.per_replicate.push_back(entry);
    if (r.status != "ok") ++w.result->failed;
  }
}

FrontTrace ode_path_trace(const Environment& env, double x0, double T, double h, std::int64_t every) {
  const OdePath path = solve_euler(env, x0, T, h);
  FrontTrace t;
  t.meta.engine = "ode";
  const auto n = static_cast<std::int64_t>(path.times.size()) - 1;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k % every == 0 || k == n) {
      t.push(k, path.times[static_cast<std::size_t>(k)], path.values[static_cast<std::size_t>(k)]);
    }
  }
  return t;
}

void single_trace(Writer& w, const std::string& name, const FrontTrace& t, double fraction) {
  w.trace_file(name, {{0, &t}});
  const Fit f = fit(t, fraction);
  w.summary.push_back({name, 0, "ok", f.slope, f.stderr_});
  w.per_replicate.push_back({{"replicate", 0}, {"status", "ok"}, {"file", name}});
}

FrontTrace pde_trace(const ExperimentConfig& c, double eps, std::uint64_t K) {
  PdeOptions o;
  o.hx = c.hx;
  o.dt = c.pde_dt;
  o.record_dt = c.record_dt;
  o.half_level = c.half_level;
  return run_pde(c.environment.build(), eps, static_cast<double>(K), c.reaction, c.T / eps, o);
}

void run_figure1(const ExperimentConfig& c, std::size_t threads, Writer& w, ojson& manifest_extra) {
  struct Panel {
    std::string column;
    double eps;
    std::uint64_t K;
  };
  std::vector<Panel> panels;
  for (auto K : c.K_ladder) panels.push_back({"fixed_eps", c.eps_fixed, K});
  for (auto eps : c.eps_ladder) panels.push_back({"fixed_K", eps, c.K_fixed});

  // Every (eps, K, replicate) is an independent job; identical cells are computed once.
  std::map<std::pair<double, std::uint64_t>, std::size_t> cell_index;
  std::vector<std::pair<double, std::uint64_t>> cells;
  for (const auto& p : panels) {
    if (cell_index.emplace(std::make_pair(p.eps, p.K), cells.size()).second) cells.emplace_back(p.eps, p.K);
  }
  const std::size_t jobs = cells.size() * c.replicates;
  const auto reps = parallel_map(jobs, threads, [&](std::size_t j) {
    return guarded([&](Replicate& r) {
      const auto& [eps, K] = cells[j / c.replicates];
      EngineConfig e = engine_config(c, eps, K);
      e.replicate = static_cast<std::uint32_t>(j % c.replicates);
      r.traces.push_back(run(e));
    });
  });
  const auto pdes = parallel_map(cells.size(), threads, [&](std::size_t i) {
    return guarded([&](Replicate& r) { r.traces.push_back(pde_trace(c, cells[i].first, cells[i].second)); });
  });

  const FrontTrace ode = ode_path_trace(c.environment.build(), 0.0, c.T, c.h,
                                        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(c.record_dt / c.h))));
  w.trace_file("ode.csv", {{0, &ode}});
  const Fit fo = fit(ode, c.window_fraction);
  w.summary.push_back({"ode.csv", 0, "ok", fo.slope, fo.stderr_});

  ojson panel_list = ojson::array();
  for (const auto& p : panels) {
    const std::size_t cell = cell_index.at({p.eps, p.K});
    const std::string stem = p.column + "_K" + std::to_string(p.K) + "_eps" + short_double(p.eps);
    std::vector<TraceRows> rows;
    ojson statuses = ojson::array();
    for (std::uint32_t r = 0; r < c.replicates; ++r) {
      const auto& rep = reps[cell * c.replicates + r];
      if (!rep.traces.empty()) rows.push_back({r, &rep.traces.front()});
      statuses.push_back(rep.status == "ok" ? ojson("ok") : ojson("error: " + rep.message));
      if (rep.status != "ok") ++w.result->failed;
      const Fit f = rep.traces.empty() ? Fit{} : fit(rep.traces.front(), c.window_fraction);
      w.summary.push_back({stem + "_particle.csv", r, rep.status, f.slope, f.stderr_});
    }
    w.trace_file(stem + "_particle.csv", rows);
    const auto& pde = pdes[cell];
    std::vector<TraceRows> pde_rows;
    if (!pde.traces.empty()) pde_rows.push_back({0, &pde.traces.front()});
    w.trace_file(stem + "_pde.csv", pde_rows);
    const Fit fp = pde.traces.empty() ? Fit{} : fit(pde.traces.front(), c.window_fraction);
    w.summary.push_back({stem + "_pde.csv", 0, pde.status, fp.slope, fp.stderr_});
    if (pde.status != "ok") ++w.result->failed;
    ojson entry{{"column", p.column},
                {"eps", p.eps},
                {"K", p.K},
                {"particle", stem + "_particle.csv"},
                {"pde", stem + "_pde.csv"},
                {"ode", "ode.csv"},
                {"replicate_status", statuses}};
    if (pde.status != "ok") entry["pde_error"] = pde.message;
    panel_list.push_back(entry);
  }
  manifest_extra["panels"] = panel_list;
  for (std::uint32_t r = 0; r < c.replicates; ++r) {
    w.per_replicate.push_back({{"replicate", r}, {"status", "see panels"}});
  }
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string version() { return FRONTLAB_VERSION; }

fs::path output_root_from_env() {
  if (const char* v = std::getenv("FRONTLAB_OUTPUT_ROOT"); v && *v) return v;
  return "frontlab-output";
}

RunResult run_experiment(const ExperimentConfig& c, const RunOptions& options) {
  RunResult result;
  result.directory = options.output_dir ? *options.output_dir : options.output_root / c.output;
  fs::create_directories(result.directory);
  const auto started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t threads = std::max<std::size_t>(1, options.threads);

  const auto warnings = config_warnings(c);
  if (options.log) {
    for (const auto& wmsg : warnings) *options.log << "warning: " << wmsg << '\n';
  }

  Writer w{result.directory, &result, {}, ojson::array()};
  ojson extra = ojson::object();
  switch (c.kind) {
    case Kind::particle:
    case Kind::brw:
    case Kind::rebooted:
      run_particle_like(c, threads, w);
      break;
    case Kind::coupled:
      run_coupled(c, threads, w);
      break;
    case Kind::ode:
      single_trace(w, "trace_ode.csv", ode_path_trace(c.environment.build(), c.x0, c.T, c.h, c.record_every),
                   c.window_fraction);
      break;
    case Kind::pde: {
      Replicate r = guarded([&](Replicate& rep) { rep.traces.push_back(pde_trace(c, c.eps, c.K)); });
      if (r.status == "ok") {
        single_trace(w, "trace_pde.csv", r.traces.front(), c.window_fraction);
      } else {
        w.summary.push_back({"trace_pde.csv", 0, r.status, kNaN, kNaN});
        w.per_replicate.push_back({{"replicate", 0}, {"status", r.status}, {"message", r.message}});
        ++result.failed;
      }
      break;
    }
    case Kind::speeds: {
      const auto s = speed_report(c.environment.mu_plus, c.environment.mu_minus);
      write_text(result.directory / "speeds.txt", s.text());
      result.files.push_back("speeds.txt");
      for (const auto& [name, value] : std::vector<std::pair<std::string, double>>{
               {"c_ode", s.ode},
               {"c_homogenized", s.homogenized},
               {"c_star0", s.star0},
               {"c_star0_literature_formula", s.star0_literature_formula}}) {
        w.summary.push_back({name, 0, "ok", value, 0.0});
      }
      extra["speeds"] = {{"ode", s.ode},
                         {"homogenized", s.homogenized},
                         {"star0", s.star0},
                         {"star0_literature_formula", s.star0_literature_formula},
                         {"star0_literature_value", kCStar0LiteratureValue},
                         {"ordering_holds", s.ordering_holds},
                         {"report", s.text()}};
      w.per_replicate.push_back({{"replicate", 0}, {"status", "ok"}});
      break;
    }
    case Kind::figure1_panel:
      run_figure1(c, threads, w, extra);
      break;
  }
  write_summary_csv(result.directory / "summary.csv", w.summary);
  result.files.push_back("summary.csv");

  ojson manifest;
  manifest["frontlab_version"] = version();
  manifest["config"] = to_json(c);
  manifest["seed"] = c.seed;
  manifest["threads"] = threads;
  manifest["started_utc"] = started;
  manifest["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest["warnings"] = warnings;
  manifest["derived"] = derived_constants(c);
  manifest["replicates"] = w.per_replicate;
  for (const auto& [k, v] : extra.items()) manifest[k] = v;
  manifest["csv_schema"] = {{"trace", kTraceHeader}, {"summary", kSummaryHeader}};
  manifest["files"] = result.files;
  write_text(result.directory / "manifest.json", manifest.dump(2) + "\n");

  result.exit_status = result.failed > 0 ? 1 : 0;
  return result;
}

int run_experiment_file(const std::string& config_path, const RunOptions& options, std::ostream& err) {
  ExperimentConfig c;
  try {
    c = load_config(config_path);
  } catch (const ConfigError& e) {
    for (const auto& d : e.diagnostics()) err << "error: " << d << '\n';
    return 2;
  }
  try {
    const RunResult r = run_experiment(c, options);
    if (r.failed > 0) err << r.failed << " replicate(s) failed; see " << (r.directory / "manifest.json").string() << '\n';
    return r.exit_status;
  } catch (const ConfigurationError& e) {
    err << "error: " << config_path << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace frontlab::app
