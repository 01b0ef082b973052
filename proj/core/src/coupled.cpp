// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>
#include <tuple>

#include "frontlab/error.hpp"
#include "frontlab/sim.hpp"
#include "lattice.hpp"

namespace frontlab {
namespace {

using detail::Lattice;

std::uint64_t bits(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

// Survival-function comparison with a diagnostic naming the failing threshold.
void require_domination(const EngineConfig& a, const EngineConfig& b, double ra, double rb,
                        std::uint64_t na, std::uint64_t nb) {
  const auto upper = site_law_pmf(a.family, ra, a.dt, na, a.K);
  const auto lower = site_law_pmf(b.family, rb, b.dt, nb, b.K);
  const std::size_t len = std::max(upper.size(), lower.size());
  double su = 0.0, sl = 0.0;
  for (std::size_t t = len; t-- > 0;) {
    su += t < upper.size() ? upper[t] : 0.0;
    sl += t < lower.size() ? lower[t] : 0.0;
    if (su < sl - 1e-12) {
      std::ostringstream msg;
      msg << "coupling hypothesis violated: n=" << nb << " (first process n=" << na << "), r=(" << ra
          << ", " << rb << "), K=(";
      if (a.K == kUnbounded) msg << "inf"; else msg << a.K;
      msg << ", ";
      if (b.K == kUnbounded) msg << "inf"; else msg << b.K;
      msg << "), threshold=" << t << ": P1(>= t)=" << su << " < P2(>= t)=" << sl;
      throw HypothesisViolation(msg.str());
    }
  }
}

void require_compatible(const EngineConfig& a, const EngineConfig& b) {
  validate_config(a);
  validate_config(b);
  if (a.dt != b.dt || a.dx != b.dx || a.eps != b.eps) {
    throw ConfigurationError("coupled pair: dt, dx and eps must agree");
  }
  if (a.seed != b.seed || a.replicate != b.replicate || a.horizon != b.horizon) {
    throw ConfigurationError("coupled pair: seed, replicate and horizon must agree");
  }
  if (std::isfinite(a.prune_depth) || std::isfinite(b.prune_depth) ||
      a.dense_threshold != kUnbounded || b.dense_threshold != kUnbounded) {
    throw ConfigurationError("coupled pair: pruning and dense scatter are not supported");
  }
}

}  // namespace

CoupledResult run_coupled_pair(const EngineConfig& first, const EngineConfig& second) {
  require_compatible(first, second);
  for (const auto& [site, n2] : second.initial.counts) {
    const auto it = first.initial.counts.find(site);
    if (it == first.initial.counts.end() || it->second < n2) {
      throw ConfigurationError("coupled pair: initial state of the first process must dominate the second at site " +
                               std::to_string(site));
    }
  }
  const StepLaw law(first.dt, first.dx);
  const std::int64_t J = law.J_trunc();
  const bool same_family = first.family.kind() == FamilyKind::bernoulli_duplication &&
                           second.family.kind() == FamilyKind::bernoulli_duplication;

  Lattice cur1, cur2, next1, next2;
  auto load = [](Lattice& l, const PopulationState& p) {
    if (p.empty()) return;
    l.ensure(p.leftmost_site(), p.rightmost_site());
    for (const auto& [s, n] : p.counts) l.add(s, n);
  };
  load(cur1, first.initial);
  load(cur2, second.initial);

  CoupledResult out;
  out.first.meta.engine = "coupled_first";
  out.second.meta.engine = "coupled_second";
  out.first.meta.replicate = out.second.meta.replicate = first.replicate;

  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> checked;
  std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> checked_monotone;
  std::int64_t generation = first.initial.generation;
  const std::int64_t end = generation + first.horizon;

  auto front = [&](const Lattice& l) {
    return l.empty() ? kNaN : first.eps * (static_cast<double>(l.hi()) * first.dx);
  };
  auto check_order = [&](std::int64_t k) {
    for (std::int64_t s : cur2.occupied()) {
      if (cur1.count(s) < cur2.count(s)) {
        if (out.dominated) out.first_violation = k;
        out.dominated = false;
        ++out.violations;
      }
    }
  };
  auto record = [&] {
    const double t = rescaled_time(first.eps, generation, first.dt);
    out.first.push(generation, t, front(cur1));
    out.second.push(generation, t, front(cur2));
  };

  check_order(generation);
  record();
  std::vector<std::pair<std::int64_t, std::uint64_t>> blue;
  while (generation < end) {
    next1.clear();
    next2.clear();
    if (!cur1.empty()) {
      const std::int64_t lo = std::min(cur1.lo(), cur2.empty() ? cur1.lo() : cur2.lo()) - J;
      const std::int64_t hi = std::max(cur1.hi(), cur2.empty() ? cur1.hi() : cur2.hi()) + J;
      if (hi - lo + 1 > first.max_window_sites) throw WindowFault("coupled pair: window too wide");
      next1.ensure(lo, hi);
      next2.ensure(lo, hi);
    }
    const double t = rescaled_time(first.eps, generation, first.dt);
    const auto key = static_cast<std::uint64_t>(generation);
    for (std::int64_t site : cur1.occupied()) {
      const std::uint64_t n1 = cur1.count(site);
      const std::uint64_t n2 = cur2.count(site);
      const double x = first.eps * static_cast<double>(site) * first.dx;
      const double r1 = first.env.evaluate(t, x);
      const double r2 = second.env.evaluate(t, x);
      if (n2 > 0 && checked.emplace(n2, bits(r1), bits(r2)).second) {
        require_domination(first, second, r1, r2, n2, n2);
        ++out.hypothesis_checks;
      }
      if (!same_family && n1 > n2 && checked_monotone.emplace(n1, n2, bits(r1)).second) {
        require_domination(first, first, r1, r1, n1, n2);
        ++out.hypothesis_checks;
      }
      rng::CounterStream shared(first.seed, first.replicate, key, site, rng::Purpose::offspring);
      const double u = shared.uniform();
      const std::uint64_t o1 = offspring_quantile(first.family, r1, first.dt, n1, first.K, u);
      const std::uint64_t o2 =
          n2 == 0 ? 0 : offspring_quantile(second.family, r2, second.dt, n2, second.K, u);
      if (o1 < o2) {
        std::ostringstream msg;
        msg << "coupled pair: offspring quantiles out of order at site " << site << " (n=" << n1
            << "/" << n2 << ", r=" << r1 << "/" << r2 << ")";
        throw HypothesisViolation(msg.str());
      }
      // Shared particles move identically in both processes.
      blue.clear();
      rng::CounterStream s_blue(first.seed, first.replicate, key, site, rng::Purpose::scatter);
      detail::scatter_exact(law, site, o2, s_blue,
                            [&](std::int64_t d, std::uint64_t c) { blue.emplace_back(d, c); });
      for (const auto& [d, c] : blue) {
        next1.add(d, c);
        next2.add(d, c);
      }
      rng::CounterStream s_red(first.seed, first.replicate, key, site, rng::Purpose::scatter_extra);
      detail::scatter_exact(law, site, o1 - o2, s_red,
                            [&](std::int64_t d, std::uint64_t c) { next1.add(d, c); });
    }
    // Sites occupied only in the second process break the ordering.
    for (std::int64_t site : cur2.occupied()) {
      if (cur1.count(site) == 0) {
        if (out.dominated) out.first_violation = generation;
        out.dominated = false;
        ++out.violations;
      }
    }
    std::swap(cur1, next1);
    std::swap(cur2, next2);
    ++generation;
    check_order(generation);
    if ((generation - first.initial.generation) % first.record_every == 0 || generation == end) record();
  }
  if (cur1.empty()) {
    out.first.meta.extinct = true;
  }
  if (cur2.empty()) {
    out.second.meta.extinct = true;
  }
  return out;
}

}  // namespace frontlab
