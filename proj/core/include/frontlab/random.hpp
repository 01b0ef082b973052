// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace frontlab::rng {

/// Philox4x32-10 block function.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                               std::array<std::uint32_t, 2> k) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += W0;
    k[1] += W1;
  }
  return c;
}

/// Stream roles. Distinct roles never share counters.
enum class Purpose : std::uint32_t {
  offspring = 1,
  scatter = 2,
  scatter_extra = 3,
  dense = 4,
  reboot = 5,
  walk = 6,
  auxiliary = 7,
};

/// Counter-based uniform stream keyed by (seed, replicate, generation, site, purpose).
///
/// Two streams with different keys are independent; a stream with the same key
/// always yields the same sequence regardless of which thread evaluates it.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t replicate, std::uint64_t generation,
                std::int64_t site, Purpose purpose)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{static_cast<std::uint32_t>(purpose) << 28,
             static_cast<std::uint32_t>(static_cast<std::uint64_t>(site)),
             static_cast<std::uint32_t>(generation),
             replicate ^ (static_cast<std::uint32_t>(generation >> 32) << 24)} {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    if (pos_ == 4) refill();
    const std::uint64_t hi = buf_[pos_++];
    const std::uint64_t lo = buf_[pos_++];
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t blocks_used() const { return ctr_[0] & 0x0FFFFFFFu; }

 private:
  void refill() {
    buf_ = philox4x32(ctr_, key_);
    ++ctr_[0];
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> ctr_;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

/// Binomial(n, p) variate. Inversion when n*min(p,1-p) < 30, BTPE otherwise.
template <class Stream>
std::uint64_t binomial(Stream& s, std::uint64_t n, double p);

/// Poisson(lambda) variate. Sequential inversion below 10, PTRS above.
template <class Stream>
std::uint64_t poisson(Stream& s, double lambda);

/// Smallest k with P(Bin(n,p) <= k) >= u. Deterministic in (n, p, u).
std::uint64_t binomial_quantile(std::uint64_t n, double p, double u);

/// Smallest k with sum_{i<=k} pmf[i] >= u * sum(pmf).
std::size_t discrete_quantile(const std::vector<double>& pmf, double u);

/// Walker alias table over a finite pmf.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(const std::vector<double>& weights);

  /// Index drawn with one uniform in (0,1).
  std::size_t sample(double u) const {
    const double scaled = u * static_cast<double>(prob_.size());
    auto i = static_cast<std::size_t>(scaled);
    if (i >= prob_.size()) i = prob_.size() - 1;
    return (scaled - static_cast<double>(i)) < prob_[i] ? i : alias_[i];
  }

  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

// ---------------------------------------------------------------------------

namespace detail {

template <class Stream>
std::uint64_t binomial_inversion(Stream& s, std::uint64_t n, double p) {
  const double q = 1.0 - p;
  const double qn = std::exp(static_cast<double>(n) * std::log1p(-p));
  const double np = static_cast<double>(n) * p;
  const double bound = std::min(static_cast<double>(n), np + 10.0 * std::sqrt(np * q + 1.0));
  std::uint64_t x = 0;
  double px = qn;
  double u = s.uniform();
  while (u > px) {
    ++x;
    if (static_cast<double>(x) > bound) {
      x = 0;
      px = qn;
      u = s.uniform();
    } else {
      u -= px;
      px = (static_cast<double>(n - x + 1) * p * px) / (static_cast<double>(x) * q);
    }
  }
  return x;
}

inline double stirling_tail(double f, double f2) {
  return (13680. - (462. - (132. - (99. - 140. / f2) / f2) / f2) / f2) / f / 166320.;
}

template <class Stream>
std::uint64_t binomial_btpe(Stream& s, std::uint64_t n_int, double r) {
  const double n = static_cast<double>(n_int);
  const double q = 1.0 - r;
  const double fm = n * r + r;
  const double m = std::floor(fm);
  const double p1 = std::floor(2.195 * std::sqrt(n * r * q) - 4.6 * q) + 0.5;
  const double xm = m + 0.5;
  const double xl = xm - p1;
  const double xr = xm + p1;
  const double c = 0.134 + 20.5 / (15.3 + m);
  double a = (fm - xl) / (fm - xl * r);
  const double laml = a * (1.0 + a / 2.0);
  a = (xr - fm) / (xr * q);
  const double lamr = a * (1.0 + a / 2.0);
  const double p2 = p1 * (1.0 + 2.0 * c);
  const double p3 = p2 + c / laml;
  const double p4 = p3 + c / lamr;
  const double nrq = n * r * q;

  for (;;) {
    const double u = s.uniform() * p4;
    double v = s.uniform();
    double y;
    if (u <= p1) {
      return static_cast<std::uint64_t>(std::floor(xm - p1 * v + u));
    }
    if (u <= p2) {
      const double x = xl + (u - p1) / c;
      v = v * c + 1.0 - std::fabs(m - x + 0.5) / p1;
      if (v > 1.0) continue;
      y = std::floor(x);
    } else if (u <= p3) {
      y = std::floor(xl + std::log(v) / laml);
      if (y < 0.0) continue;
      v = v * (u - p2) * laml;
    } else {
      y = std::floor(xr - std::log(v) / lamr);
      if (y > n) continue;
      v = v * (u - p3) * lamr;
    }

    const double k = std::fabs(y - m);
    if (k <= 20.0 || k >= nrq / 2.0 - 1.0) {
      // Explicit ratio of pmf values between mode and candidate.
      const double sr = r / q;
      const double aa = sr * (n + 1.0);
      double f = 1.0;
      if (m < y) {
        for (double i = m + 1.0; i <= y; i += 1.0) f *= (aa / i - sr);
      } else if (m > y) {
        for (double i = y + 1.0; i <= m; i += 1.0) f /= (aa / i - sr);
      }
      if (v > f) continue;
      return static_cast<std::uint64_t>(y);
    }

    // Squeeze on log scale, then the Stirling-corrected bound.
    const double rho = (k / nrq) * ((k * (k / 3.0 + 0.625) + 0.16666666666666666) / nrq + 0.5);
    const double t = -k * k / (2.0 * nrq);
    const double big_a = std::log(v);
    if (big_a < t - rho) return static_cast<std::uint64_t>(y);
    if (big_a > t + rho) continue;

    const double x1 = y + 1.0, f1 = m + 1.0, z = n + 1.0 - m, w = n - y + 1.0;
    const double bound = xm * std::log(f1 / x1) + (n - m + 0.5) * std::log(z / w) +
                         (y - m) * std::log(w * r / (x1 * q)) + stirling_tail(f1, f1 * f1) +
                         stirling_tail(z, z * z) + stirling_tail(x1, x1 * x1) +
                         stirling_tail(w, w * w);
    if (big_a > bound) continue;
    return static_cast<std::uint64_t>(y);
  }
}

}  // namespace detail

template <class Stream>
std::uint64_t binomial(Stream& s, std::uint64_t n, double p) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double r = flip ? 1.0 - p : p;
  const std::uint64_t y = (static_cast<double>(n) * r < 30.0) ? detail::binomial_inversion(s, n, r)
                                                              : detail::binomial_btpe(s, n, r);
  return flip ? n - y : y;
}

template <class Stream>
std::uint64_t poisson(Stream& s, double lambda) {
  if (!(lambda > 0.0)) return 0;
  if (lambda < 10.0) {
    const double emlam = std::exp(-lambda);
    std::uint64_t x = 0;
    double prod = s.uniform();
    while (prod > emlam) {
      ++x;
      prod *= s.uniform();
    }
    return x;
  }
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = s.uniform() - 0.5;
    const double v = s.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace frontlab::rng
