// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/random.hpp"

#include <numeric>
#include <stdexcept>

namespace frontlab::rng {

std::uint64_t binomial_quantile(std::uint64_t n, double p, double u) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double nd = static_cast<double>(n);
  const double q = 1.0 - p;
  const double mode = std::min(nd, std::floor((nd + 1.0) * p));
  const double log_mode = std::lgamma(nd + 1.0) - std::lgamma(mode + 1.0) -
                          std::lgamma(nd - mode + 1.0) + mode * std::log(p) +
                          (nd - mode) * std::log1p(-p);
  constexpr double kNegligible = 1e-19;
  const double pm = std::exp(log_mode);

  // Walk outwards from the mode until the pmf is negligible.
  std::vector<double> below;
  double v = pm;
  for (double k = mode; k > 0.0;) {
    v *= k * q / ((nd - k + 1.0) * p);
    k -= 1.0;
    if (v < kNegligible * pm) break;
    below.push_back(v);
  }
  std::vector<double> above;
  v = pm;
  for (double k = mode; k < nd;) {
    v *= (nd - k) * p / ((k + 1.0) * q);
    k += 1.0;
    if (v < kNegligible * pm) break;
    above.push_back(v);
  }
  const double total = std::accumulate(below.begin(), below.end(), 0.0) + pm +
                       std::accumulate(above.begin(), above.end(), 0.0);
  const double target = u * total;
  const auto lowest = static_cast<std::uint64_t>(mode) - below.size();
  double acc = 0.0;
  for (std::size_t i = below.size(); i-- > 0;) {
    acc += below[i];
    if (acc >= target) return lowest + (below.size() - 1 - i);
  }
  acc += pm;
  if (acc >= target) return static_cast<std::uint64_t>(mode);
  for (std::size_t i = 0; i < above.size(); ++i) {
    acc += above[i];
    if (acc >= target) return static_cast<std::uint64_t>(mode) + i + 1;
  }
  return static_cast<std::uint64_t>(mode) + above.size();
}

std::size_t discrete_quantile(const std::vector<double>& pmf, double u) {
  if (pmf.empty()) throw std::invalid_argument("discrete_quantile: empty pmf");
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  const double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    if (acc >= target && pmf[i] > 0.0) return i;
  }
  for (std::size_t i = pmf.size(); i-- > 0;) {
    if (pmf[i] > 0.0) return i;
  }
  return pmf.size() - 1;
}

AliasTable::AliasTable(const std::vector<double>& weights)
    : prob_(weights.size(), 0.0), alias_(weights.size(), 0) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::size_t i : small) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

}  // namespace frontlab::rng
