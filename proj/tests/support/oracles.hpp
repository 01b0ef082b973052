// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
// Independent reference computations used only by tests.
#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

/// Standard normal CDF at 50 digits.
inline big normal_cdf(const big& z) {
  return (1 + boost::math::erf(z / boost::multiprecision::sqrt(big(2)))) / 2;
}

/// Cell mass of the discretized Gaussian at 50 digits.
inline double cell_mass(std::int64_t j, double dt, double dx) {
  const big s = boost::multiprecision::sqrt(big(dt));
  const big hi = (big(j) + big(0.5)) * big(dx) / s;
  const big lo = (big(j) - big(0.5)) * big(dx) / s;
  if (j > 0) {
    return static_cast<double>((boost::math::erfc(lo / boost::multiprecision::sqrt(big(2))) -
                                boost::math::erfc(hi / boost::multiprecision::sqrt(big(2)))) /
                               2);
  }
  return static_cast<double>(normal_cdf(hi) - normal_cdf(lo));
}

/// Binomial pmf by the product formula in long double.
inline std::vector<double> binomial_pmf(std::uint64_t n, double p) {
  std::vector<double> out(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    long double c = 1.0L;
    for (std::uint64_t i = 0; i < k; ++i) c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    out[k] = static_cast<double>(c * std::pow(static_cast<long double>(p), static_cast<long double>(k)) *
                                 std::pow(1.0L - p, static_cast<long double>(n - k)));
  }
  return out;
}

/// Pearson chi-square p-value of observed counts against expected probabilities,
/// pooling cells with expectation below 5.
inline double chi_square_pvalue(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs) {
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  double stat = 0.0, e_pool = 0.0, o_pool = 0.0;
  int df = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double e = probs[i] * static_cast<double>(total);
    const double o = i < observed.size() ? static_cast<double>(observed[i]) : 0.0;
    e_pool += e;
    o_pool += o;
    if (e_pool >= 5.0) {
      stat += (o_pool - e_pool) * (o_pool - e_pool) / e_pool;
      ++df;
      e_pool = o_pool = 0.0;
    }
  }
  if (e_pool > 0.0) {
    stat += (o_pool - e_pool) * (o_pool - e_pool) / std::max(e_pool, 1e-300);
    ++df;
  }
  if (df < 1) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), stat));
}

/// Uniform source over std::mt19937_64, independent of the library generator.
struct TwisterStream {
  std::mt19937_64 gen;
  explicit TwisterStream(std::uint64_t seed) : gen(seed) {}
  double uniform() { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; }
};

/// Draws one step of the discretized Gaussian by rounding a Gaussian to the lattice.
inline std::int64_t lattice_gaussian_step(std::mt19937_64& gen, double dt, double dx) {
  std::normal_distribution<double> z(0.0, std::sqrt(dt));
  return static_cast<std::int64_t>(std::floor(z(gen) / dx + 0.5));
}

}  // namespace oracle
