// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace frontlab {

/// Sparse occupation numbers on the lattice; only positive counts are stored.
struct PopulationState {
  std::map<std::int64_t, std::uint64_t> counts;
  std::int64_t generation = 0;

  static PopulationState single(std::int64_t site = 0, std::uint64_t n = 1);
  /// per_site particles on every site in [first, last).
  static PopulationState block(std::int64_t first, std::int64_t last, std::uint64_t per_site);

  void add(std::int64_t site, std::uint64_t n);
  bool empty() const { return counts.empty(); }
  std::uint64_t total() const;
  std::int64_t rightmost_site() const;
  std::int64_t leftmost_site() const;
  /// Number of particles strictly to the right of position a (lattice spacing dx).
  std::uint64_t count_above(double a, double dx) const;
  /// Throws if a zero count is stored.
  void validate() const;
};

struct TraceMeta {
  std::string engine;
  std::uint32_t replicate = 0;
  bool extinct = false;
  std::int64_t extinction_generation = -1;
  bool faulted = false;
  std::string fault;
};

/// Front positions against rescaled time.
struct FrontTrace {
  std::vector<std::int64_t> steps;
  std::vector<double> times;
  std::vector<double> positions;
  TraceMeta meta;

  void push(std::int64_t step, double time, double position) {
    steps.push_back(step);
    times.push_back(time);
    positions.push_back(position);
  }
  std::size_t size() const { return times.size(); }
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace frontlab
