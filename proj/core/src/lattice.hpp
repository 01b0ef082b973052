// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "frontlab/error.hpp"
#include "frontlab/kernel.hpp"
#include "frontlab/random.hpp"

namespace frontlab::detail {

inline constexpr std::uint64_t kCountCeiling = std::uint64_t{1} << 62;

/// Counts on a contiguous buffer plus the list of occupied sites.
class Lattice {
 public:
  std::uint64_t count(std::int64_t site) const {
    const std::int64_t k = site - origin_;
    if (k < 0 || k >= static_cast<std::int64_t>(cnt_.size())) return 0;
    return cnt_[static_cast<std::size_t>(k)];
  }

  void add(std::int64_t site, std::uint64_t n) {
    std::uint64_t& c = cnt_[static_cast<std::size_t>(site - origin_)];
    if (c == 0) {
      occupied_.push_back(site);
      lo_ = std::min(lo_, site);
      hi_ = std::max(hi_, site);
    }
    c += n;
    if (c >= kCountCeiling) throw NumericalError("lattice: site count overflow");
  }

  /// Grows or re-anchors the buffer so that [lo, hi] is addressable.
  void ensure(std::int64_t lo, std::int64_t hi) {
    const auto size = static_cast<std::int64_t>(cnt_.size());
    if (lo >= origin_ && hi < origin_ + size) return;
    const std::int64_t width = hi - lo + 1;
    const std::int64_t slack = std::max<std::int64_t>(1024, width / 2);
    std::vector<std::uint64_t> fresh(static_cast<std::size_t>(width + 2 * slack), 0);
    const std::int64_t new_origin = lo - slack;
    for (std::int64_t s : occupied_) {
      const std::int64_t k = s - new_origin;
      if (k < 0 || k >= static_cast<std::int64_t>(fresh.size())) {
        throw WindowFault("lattice: occupied site outside re-anchored window");
      }
      fresh[static_cast<std::size_t>(k)] = cnt_[static_cast<std::size_t>(s - origin_)];
    }
    cnt_.swap(fresh);
    origin_ = new_origin;
  }

  void clear() {
    for (std::int64_t s : occupied_) cnt_[static_cast<std::size_t>(s - origin_)] = 0;
    occupied_.clear();
    lo_ = std::numeric_limits<std::int64_t>::max();
    hi_ = std::numeric_limits<std::int64_t>::min();
  }

  /// Removes every site strictly below cutoff.
  void drop_below(std::int64_t cutoff) {
    if (occupied_.empty() || lo_ >= cutoff) return;
    std::size_t w = 0;
    lo_ = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t s : occupied_) {
      if (s < cutoff) {
        cnt_[static_cast<std::size_t>(s - origin_)] = 0;
      } else {
        occupied_[w++] = s;
        lo_ = std::min(lo_, s);
      }
    }
    occupied_.resize(w);
    if (occupied_.empty()) hi_ = std::numeric_limits<std::int64_t>::min();
  }

  const std::vector<std::int64_t>& occupied() const { return occupied_; }
  bool empty() const { return occupied_.empty(); }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

 private:
  std::int64_t origin_ = 0;
  std::vector<std::uint64_t> cnt_;
  std::vector<std::int64_t> occupied_;
  std::int64_t lo_ = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi_ = std::numeric_limits<std::int64_t>::min();
};

/// Multinomial displacement of n particles from site `from` according to law.
/// emit(destination_site, count) is called once per non-empty destination.
template <class Stream, class Emit>
void scatter_exact(const StepLaw& law, std::int64_t from, std::uint64_t n, Stream& s, Emit&& emit) {
  if (n == 0) return;
  const std::int64_t J = law.J_trunc();
  if (n <= law.cells()) {
    const auto& alias = law.alias();
    for (std::uint64_t p = 0; p < n; ++p) {
      emit(from + static_cast<std::int64_t>(alias.sample(s.uniform())) - J, std::uint64_t{1});
    }
    return;
  }
  const auto& order = law.scatter_order();
  const auto& cond = law.scatter_conditional();
  std::uint64_t remaining = n;
  for (std::size_t t = 0; t < order.size() && remaining > 0; ++t) {
    const std::uint64_t b = t + 1 == order.size() ? remaining : rng::binomial(s, remaining, cond[t]);
    if (b > 0) {
      emit(from + order[t], b);
      remaining -= b;
    }
  }
}

}  // namespace frontlab::detail
