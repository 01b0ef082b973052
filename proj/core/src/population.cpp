// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/population.hpp"

#include <cmath>

#include "frontlab/error.hpp"

namespace frontlab {

PopulationState PopulationState::single(std::int64_t site, std::uint64_t n) {
  PopulationState s;
  s.add(site, n);
  return s;
}

PopulationState PopulationState::block(std::int64_t first, std::int64_t last, std::uint64_t per_site) {
  PopulationState s;
  for (std::int64_t i = first; i < last; ++i) s.add(i, per_site);
  return s;
}

void PopulationState::add(std::int64_t site, std::uint64_t n) {
  if (n == 0) return;
  counts[site] += n;
}

std::uint64_t PopulationState::total() const {
  std::uint64_t t = 0;
  for (const auto& [site, n] : counts) t += n;
  return t;
}

std::int64_t PopulationState::rightmost_site() const {
  if (counts.empty()) throw Error("population: empty state has no rightmost site");
  return counts.rbegin()->first;
}

std::int64_t PopulationState::leftmost_site() const {
  if (counts.empty()) throw Error("population: empty state has no leftmost site");
  return counts.begin()->first;
}

std::uint64_t PopulationState::count_above(double a, double dx) const {
  std::uint64_t c = 0;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    if (static_cast<double>(it->first) * dx > a) c += it->second; else break;
  }
  return c;
}

void PopulationState::validate() const {
  for (const auto& [site, n] : counts) {
    if (n == 0) throw ConfigurationError("population: zero count stored at site " + std::to_string(site));
  }
}

}  // namespace frontlab
