// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>

#include "frontlab/error.hpp"
#include "frontlab/sim.hpp"
#include "lattice.hpp"

namespace frontlab {

using detail::Lattice;

void validate_config(const EngineConfig& c) {
  if (!(c.dt > 0.0) || !(c.dx > 0.0) || !std::isfinite(c.dt) || !std::isfinite(c.dx)) {
    throw ConfigurationError("engine: dt and dx must be positive and finite");
  }
  if (!(c.eps > 0.0) || !std::isfinite(c.eps)) throw ConfigurationError("engine: eps must be positive");
  if (c.K == 0) throw ConfigurationError("engine: capacity K must be at least 1");
  if (c.horizon < 0) throw ConfigurationError("engine: negative horizon");
  if (c.record_every < 1) throw ConfigurationError("engine: record_every must be >= 1");
  if (!(c.prune_depth > 0.0)) throw ConfigurationError("engine: prune_depth must be positive");
  if (c.dense_threshold == 0) throw ConfigurationError("engine: dense_threshold must be >= 1");
  if (!c.family.certified()) {
    throw ConfigurationError("engine: offspring family '" + c.family.label() + "' is not certified");
  }
  if (c.family.kind() == FamilyKind::bernoulli_duplication && c.env.r_sup() * c.dt > 1.0) {
    std::ostringstream msg;
    msg << "engine: r_sup * dt = " << c.env.r_sup() * c.dt << " exceeds 1";
    throw ConfigurationError(msg.str());
  }
  if (c.initial.empty()) throw ConfigurationError("engine: initial population is empty");
  c.initial.validate();
}

struct ParticleEngine::Impl {
  EngineConfig cfg;
  std::shared_ptr<const StepLaw> law;
  Lattice cur, next;
  std::vector<double> mass;
  std::int64_t mass_origin = 0;
  std::int64_t generation = 0;
  std::int64_t prune_sites = std::numeric_limits<std::int64_t>::max();

  void load(const PopulationState& p) {
    cur.clear();
    if (p.empty()) return;
    cur.ensure(p.leftmost_site(), p.rightmost_site());
    for (const auto& [site, n] : p.counts) cur.add(site, n);
  }

  void guard_window(std::int64_t lo, std::int64_t hi) const {
    if (hi - lo + 1 > cfg.max_window_sites) {
      std::ostringstream msg;
      msg << "engine: occupied window of " << (hi - lo + 1) << " sites exceeds max_window_sites = "
          << cfg.max_window_sites;
      throw WindowFault(msg.str());
    }
  }

  void step() {
    const std::int64_t J = law->J_trunc();
    next.clear();
    if (cur.empty()) {
      ++generation;
      return;
    }
    const std::int64_t lo = cur.lo() - J, hi = cur.hi() + J;
    guard_window(lo, hi);
    next.ensure(lo, hi);

    const double t = rescaled_time(cfg.eps, generation, cfg.dt);
    const auto gen_key = static_cast<std::uint64_t>(generation);
    bool any_dense = false;
    std::int64_t dense_lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t dense_hi = std::numeric_limits<std::int64_t>::min();
    const auto& weights = law->weights();

    for (std::int64_t site : cur.occupied()) {
      const std::uint64_t n = cur.count(site);
      const double r = cfg.env.evaluate(t, cfg.eps * static_cast<double>(site) * cfg.dx);
      rng::CounterStream off(cfg.seed, cfg.replicate, gen_key, site, rng::Purpose::offspring);
      const std::uint64_t o = sample_site_offspring(cfg.family, r, cfg.dt, n, cfg.K, off);
      if (o == 0) continue;
      if (o >= cfg.dense_threshold) {
        if (!any_dense) {
          mass.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
          mass_origin = lo;
          any_dense = true;
        }
        const double od = static_cast<double>(o);
        double* m = mass.data() + (site - J - mass_origin);
        for (std::size_t k = 0; k < weights.size(); ++k) m[k] += od * weights[k];
        dense_lo = std::min(dense_lo, site - J);
        dense_hi = std::max(dense_hi, site + J);
        continue;
      }
      rng::CounterStream mig(cfg.seed, cfg.replicate, gen_key, site, rng::Purpose::scatter);
      detail::scatter_exact(*law, site, o, mig,
                            [this](std::int64_t d, std::uint64_t c) { next.add(d, c); });
    }

    if (any_dense) {
      for (std::int64_t d = dense_lo; d <= dense_hi; ++d) {
        double& m = mass[static_cast<std::size_t>(d - mass_origin)];
        if (m > 0.0) {
          rng::CounterStream pois(cfg.seed, cfg.replicate, gen_key, d, rng::Purpose::dense);
          const std::uint64_t c = rng::poisson(pois, m);
          if (c > 0) next.add(d, c);
        }
      }
    }

    std::swap(cur, next);
    ++generation;
    if (prune_sites != std::numeric_limits<std::int64_t>::max() && !cur.empty()) {
      cur.drop_below(cur.hi() - prune_sites);
    }
  }
};

ParticleEngine::ParticleEngine(const EngineConfig& config)
    : ParticleEngine(config, std::make_shared<const StepLaw>(config.dt, config.dx)) {}

ParticleEngine::ParticleEngine(const EngineConfig& config, std::shared_ptr<const StepLaw> law)
    : impl_(std::make_unique<Impl>()) {
  validate_config(config);
  if (!law || law->dt() != config.dt || law->dx() != config.dx) {
    throw ConfigurationError("engine: step law does not match (dt, dx)");
  }
  impl_->cfg = config;
  impl_->law = std::move(law);
  impl_->generation = config.initial.generation;
  if (std::isfinite(config.prune_depth)) {
    impl_->prune_sites = static_cast<std::int64_t>(std::ceil(config.prune_depth / config.dx));
  }
  impl_->load(config.initial);
}

ParticleEngine::~ParticleEngine() = default;
ParticleEngine::ParticleEngine(ParticleEngine&&) noexcept = default;
ParticleEngine& ParticleEngine::operator=(ParticleEngine&&) noexcept = default;

void ParticleEngine::step() { impl_->step(); }
std::int64_t ParticleEngine::generation() const { return impl_->generation; }
bool ParticleEngine::empty() const { return impl_->cur.empty(); }

std::uint64_t ParticleEngine::total() const {
  std::uint64_t t = 0;
  for (std::int64_t s : impl_->cur.occupied()) t += impl_->cur.count(s);
  return t;
}

std::int64_t ParticleEngine::rightmost_site() const {
  if (empty()) throw Error("engine: empty population");
  return impl_->cur.hi();
}

std::int64_t ParticleEngine::leftmost_site() const {
  if (empty()) throw Error("engine: empty population");
  return impl_->cur.lo();
}

std::int64_t ParticleEngine::max_abs_site() const {
  if (empty()) throw Error("engine: empty population");
  return std::max(std::llabs(impl_->cur.lo()), std::llabs(impl_->cur.hi()));
}

PopulationState ParticleEngine::state() const {
  PopulationState p;
  p.generation = impl_->generation;
  for (std::int64_t s : impl_->cur.occupied()) p.counts.emplace(s, impl_->cur.count(s));
  return p;
}

void ParticleEngine::reset(const PopulationState& population) {
  population.validate();
  impl_->load(population);
}

double ParticleEngine::time_rescaled() const {
  return rescaled_time(impl_->cfg.eps, impl_->generation, impl_->cfg.dt);
}

double ParticleEngine::front_rescaled() const {
  if (empty()) return kNaN;
  return impl_->cfg.eps * (static_cast<double>(impl_->cur.hi()) * impl_->cfg.dx);
}

const EngineConfig& ParticleEngine::config() const { return impl_->cfg; }
const StepLaw& ParticleEngine::law() const { return *impl_->law; }

PopulationState step_generation(const PopulationState& state, const EngineConfig& config) {
  EngineConfig c = config;
  c.initial = state;
  ParticleEngine engine(c);
  engine.step();
  return engine.state();
}

FrontTrace run(const EngineConfig& config) {
  ParticleEngine engine(config);
  FrontTrace trace;
  trace.meta.engine = "particle";
  trace.meta.replicate = config.replicate;
  const std::int64_t start = engine.generation();
  const std::int64_t end = start + config.horizon;
  auto record = [&] {
    trace.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
  };
  record();
  while (engine.generation() < end) {
    engine.step();
    if (engine.empty()) {
      trace.meta.extinct = true;
      trace.meta.extinction_generation = engine.generation();
      record();
      break;
    }
    if ((engine.generation() - start) % config.record_every == 0 || engine.generation() == end) {
      record();
    }
  }
  return trace;
}

std::int64_t reboot_period(std::uint64_t K) {
  if (K == kUnbounded || K < 3) throw ConfigurationError("reboot: need finite K >= 3");
  return static_cast<std::int64_t>(std::floor(std::log(static_cast<double>(K))));
}

RebootedResult run_rebooted(const EngineConfig& config, std::int64_t period) {
  RebootedResult out;
  out.period = period > 0 ? period : reboot_period(config.K);
  ParticleEngine engine(config);
  out.trace.meta.engine = "rebooted";
  out.trace.meta.replicate = config.replicate;
  if (engine.empty()) throw ConfigurationError("reboot: empty initial population");

  const std::int64_t start = engine.generation();
  const std::int64_t end = start + config.horizon;
  out.trace.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
  std::int64_t block_start_site = engine.rightmost_site();
  bool hit = false;
  while (engine.generation() < end) {
    engine.step();
    if (engine.empty()) {
      out.trace.meta.extinct = true;
      out.trace.meta.extinction_generation = engine.generation();
      out.trace.push(engine.generation(), engine.time_rescaled(), kNaN);
      break;
    }
    if (config.K != kUnbounded && engine.total() >= config.K) hit = true;
    const std::int64_t elapsed = engine.generation() - start;
    if (elapsed % out.period == 0) {
      const std::int64_t front = engine.rightmost_site();
      out.block_drift.push_back(front - block_start_site);
      ++out.blocks;
      if (hit) ++out.capacity_hits;
      hit = false;
      PopulationState one = PopulationState::single(front, 1);
      one.generation = engine.generation();
      engine.reset(one);
      block_start_site = front;
    }
    if (elapsed % config.record_every == 0 || engine.generation() == end) {
      out.trace.push(engine.generation(), engine.time_rescaled(), engine.front_rescaled());
    }
  }
  return out;
}

double escape_radius(double eps) {
  if (!(eps > 0.0)) throw ConfigurationError("observe_stopping: eps must be positive");
  return std::pow(eps, -0.25);
}

StoppingObservation observe_stopping(const EngineConfig& config, double eps, std::int64_t horizon) {
  StoppingObservation obs;
  obs.radius = escape_radius(eps);
  EngineConfig c = config;
  c.K = kUnbounded;
  ParticleEngine engine(c);
  const std::int64_t start = engine.generation();
  auto inspect = [&] {
    if (engine.empty()) return;
    const std::int64_t k = engine.generation() - start;
    if (!obs.tau_capacity && config.K != kUnbounded && engine.total() >= config.K) obs.tau_capacity = k;
    if (!obs.tau_escape && static_cast<double>(engine.max_abs_site()) * config.dx > obs.radius) {
      obs.tau_escape = k;
    }
  };
  inspect();
  while (engine.generation() - start < horizon && !(obs.tau_capacity && obs.tau_escape)) {
    engine.step();
    if (engine.empty()) break;
    inspect();
  }
  return obs;
}

}  // namespace frontlab
