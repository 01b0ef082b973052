// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/distributions/poisson.hpp>
#include <cmath>
#include <map>
#include <set>

#include "frontlab/random.hpp"
#include "oracles.hpp"

using frontlab::rng::AliasTable;
using frontlab::rng::CounterStream;
using frontlab::rng::Purpose;

namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, ZeroCounterAndKey) {
  const auto out = frontlab::rng::philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, AllOnes) {
  const auto out = frontlab::rng::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                             {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, PiDigits) {
  const auto out = frontlab::rng::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                             {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(CounterStream, SameKeySameSequence) {
  CounterStream a(42, 3, 17, -5, Purpose::scatter), b(42, 3, 17, -5, Purpose::scatter);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(CounterStream, KeysSeparateStreams) {
  std::set<double> firsts;
  for (auto p : {Purpose::offspring, Purpose::scatter, Purpose::scatter_extra, Purpose::dense}) {
    for (std::int64_t site : {-1, 0, 1}) {
      for (std::uint64_t gen : {0ull, 1ull, (1ull << 32)}) {
        for (std::uint32_t rep : {0u, 1u}) {
          CounterStream s(7, rep, gen, site, p);
          firsts.insert(s.uniform());
        }
      }
    }
  }
  EXPECT_EQ(firsts.size(), 4u * 3u * 3u * 2u);
}

TEST(CounterStream, UniformsInOpenInterval) {
  CounterStream s(1, 0, 0, 0, Purpose::auxiliary);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

std::vector<std::uint64_t> binomial_histogram(std::uint64_t n, double p, int draws, std::uint64_t seed) {
  std::vector<std::uint64_t> h(n + 1, 0);
  CounterStream s(seed, 0, 0, 0, Purpose::auxiliary);
  for (int i = 0; i < draws; ++i) {
    const auto x = frontlab::rng::binomial(s, n, p);
    EXPECT_LE(x, n);
    ++h[x];
  }
  return h;
}

struct BinomialCase {
  std::uint64_t n;
  double p;
};

class BinomialChiSquare : public ::testing::TestWithParam<BinomialCase> {};

TEST_P(BinomialChiSquare, MatchesExactPmf) {
  const auto [n, p] = GetParam();
  const auto h = binomial_histogram(n, p, 200000, 1000 + n);
  EXPECT_GT(oracle::chi_square_pvalue(h, oracle::binomial_pmf(n, p)), 1e-4);
}

// Inversion branch, BTPE branch, and the p > 1/2 reflection of each.
INSTANTIATE_TEST_SUITE_P(Branches, BinomialChiSquare,
                         ::testing::Values(BinomialCase{20, 0.3}, BinomialCase{5, 0.1}, BinomialCase{1000, 0.4},
                                           BinomialCase{400, 0.1}, BinomialCase{50, 0.9},
                                           BinomialCase{600, 0.85}));

TEST(Binomial, DegenerateProbabilities) {
  CounterStream s(1, 0, 0, 0, Purpose::auxiliary);
  EXPECT_EQ(frontlab::rng::binomial(s, 10, 0.0), 0u);
  EXPECT_EQ(frontlab::rng::binomial(s, 10, 1.0), 10u);
  EXPECT_EQ(frontlab::rng::binomial(s, 0, 0.5), 0u);
}

TEST(Binomial, HugeCountMeanAndVariance) {
  CounterStream s(9, 0, 0, 0, Purpose::auxiliary);
  const std::uint64_t n = 1ull << 40;
  const double p = 1e-3;
  const int draws = 20000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double x = static_cast<double>(frontlab::rng::binomial(s, n, p));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / draws, var = sum2 / draws - mean * mean;
  const double m = static_cast<double>(n) * p, v = m * (1 - p);
  EXPECT_NEAR(mean, m, 4.0 * std::sqrt(v / draws));
  EXPECT_NEAR(var / v, 1.0, 0.05);
}

class PoissonChiSquare : public ::testing::TestWithParam<double> {};

TEST_P(PoissonChiSquare, MatchesExactPmf) {
  const double lambda = GetParam();
  boost::math::poisson_distribution<double> dist(lambda);
  const auto top = static_cast<std::size_t>(lambda + 12.0 * std::sqrt(lambda) + 20.0);
  std::vector<double> pmf(top + 1);
  for (std::size_t k = 0; k <= top; ++k) pmf[k] = boost::math::pdf(dist, static_cast<double>(k));
  std::vector<std::uint64_t> h(top + 1, 0);
  CounterStream s(77, 0, 0, 0, Purpose::auxiliary);
  for (int i = 0; i < 200000; ++i) {
    const auto x = frontlab::rng::poisson(s, lambda);
    ASSERT_LE(x, top);
    ++h[x];
  }
  EXPECT_GT(oracle::chi_square_pvalue(h, pmf), 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Branches, PoissonChiSquare, ::testing::Values(0.3, 3.5, 9.9, 10.0, 40.0, 900.0));

TEST(BinomialQuantile, MatchesCdfDefinition) {
  for (auto [n, p] : std::vector<std::pair<std::uint64_t, double>>{{10, 0.1}, {37, 0.5}, {200, 0.03}}) {
    const auto pmf = oracle::binomial_pmf(n, p);
    for (double u : {1e-9, 0.01, 0.2, 0.5, 0.77, 0.99, 1.0 - 1e-9}) {
      const auto k = frontlab::rng::binomial_quantile(n, p, u);
      double cdf = 0.0;
      for (std::uint64_t i = 0; i <= k; ++i) cdf += pmf[i];
      EXPECT_GE(cdf, u - 1e-12) << n << ' ' << p << ' ' << u;
      if (k > 0) EXPECT_LT(cdf - pmf[k], u + 1e-12) << n << ' ' << p << ' ' << u;
    }
  }
}

TEST(BinomialQuantile, MonotoneInUniformProperty) {
  CounterStream gen(5, 0, 0, 0, Purpose::auxiliary);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::uint64_t>(1 + 2000 * gen.uniform());
    const double p = gen.uniform();
    double u1 = gen.uniform(), u2 = gen.uniform();
    if (u1 > u2) std::swap(u1, u2);
    EXPECT_LE(frontlab::rng::binomial_quantile(n, p, u1), frontlab::rng::binomial_quantile(n, p, u2));
    EXPECT_LE(frontlab::rng::binomial_quantile(n, p, u2), n);
  }
}

TEST(DiscreteQuantile, UnnormalizedWeights) {
  const std::vector<double> w = {1.0, 0.0, 3.0};
  EXPECT_EQ(frontlab::rng::discrete_quantile(w, 0.2), 0u);
  EXPECT_EQ(frontlab::rng::discrete_quantile(w, 0.25), 0u);
  EXPECT_EQ(frontlab::rng::discrete_quantile(w, 0.26), 2u);
  EXPECT_EQ(frontlab::rng::discrete_quantile(w, 0.999), 2u);
}

TEST(AliasTable, FrequenciesMatchWeights) {
  const std::vector<double> w = {0.1, 0.0, 0.25, 0.05, 0.6};
  AliasTable table(w);
  ASSERT_EQ(table.size(), w.size());
  std::vector<std::uint64_t> h(w.size(), 0);
  CounterStream s(11, 0, 0, 0, Purpose::auxiliary);
  for (int i = 0; i < 300000; ++i) ++h[table.sample(s.uniform())];
  EXPECT_EQ(h[1], 0u);
  EXPECT_GT(oracle::chi_square_pvalue(h, w), 1e-4);
}

}  // namespace
