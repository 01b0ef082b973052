// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/offspring.hpp"
#include "frontlab/random.hpp"
#include "oracles.hpp"

using namespace frontlab;

namespace {

const OffspringFamily kBernoulli = OffspringFamily::bernoulli_duplication();

TEST(Family, BernoulliIndividualLaw) {
  const auto pmf = kBernoulli.individual_pmf(1.0, 0.1);
  ASSERT_EQ(pmf.size(), 3u);
  EXPECT_EQ(pmf[0], 0.0);
  EXPECT_NEAR(pmf[1], 0.9, 1e-15);
  EXPECT_NEAR(pmf[2], 0.1, 1e-15);
  EXPECT_NEAR(kBernoulli.mean(1.0, 0.1), 1.1, 1e-15);
  EXPECT_TRUE(kBernoulli.certified());
}

TEST(Family, DuplicationProbabilityGuard) {
  EXPECT_THROW(require_duplication_probability(11.0, 0.1), ConfigurationError);
  EXPECT_THROW(require_duplication_probability(-1.0, 0.1), ConfigurationError);
  EXPECT_NO_THROW(require_duplication_probability(10.0, 0.1));
}

TEST(SiteLaw, UntruncatedIsShiftedBinomial) {
  const auto pmf = site_law_pmf(kBernoulli, 2.0, 0.1, 12, kUnbounded);
  const auto ref = oracle::binomial_pmf(12, 0.2);
  ASSERT_EQ(pmf.size(), 25u);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(pmf[k], 0.0);
  for (std::size_t k = 0; k <= 12; ++k) EXPECT_NEAR(pmf[12 + k], ref[k], 1e-14);
}

TEST(SiteLaw, CapacityFoldsUpperMass) {
  const std::uint64_t K = 15;
  const auto pmf = site_law_pmf(kBernoulli, 2.0, 0.1, 12, K);
  const auto ref = oracle::binomial_pmf(12, 0.2);
  ASSERT_EQ(pmf.size(), K + 1);
  double folded = 0.0;
  for (std::size_t k = 3; k <= 12; ++k) folded += ref[k];
  EXPECT_NEAR(pmf[K], folded, 1e-14);
  EXPECT_NEAR(pmf[14], ref[2], 1e-14);
}

TEST(SiteLaw, NoGrowthProbabilityByMonteCarlo) {
  // Five particles at r dt = 0.1 leave exactly five offspring with probability 0.9^5.
  const double p = 0.59049;
  const int draws = 1'000'000;
  int hits = 0;
  rng::CounterStream s(123, 0, 0, 0, rng::Purpose::auxiliary);
  for (int i = 0; i < draws; ++i) hits += sample_site_offspring(kBernoulli, 1.0, 0.1, 5, 100, s) == 5;
  EXPECT_NEAR(static_cast<double>(hits) / draws, p, 3.0 * std::sqrt(p * (1 - p) / draws));
}

TEST(SiteLaw, SamplerMatchesExactPmfProperty) {
  rng::CounterStream gen(8, 0, 0, 0, rng::Purpose::auxiliary);
  for (int trial = 0; trial < 6; ++trial) {
    const auto n = static_cast<std::uint64_t>(1 + 30 * gen.uniform());
    const double r = 0.5 + 9.0 * gen.uniform();
    const auto K = static_cast<std::uint64_t>(1 + 60 * gen.uniform());
    const auto pmf = site_law_pmf(kBernoulli, r, 0.1, n, K);
    std::vector<std::uint64_t> h(pmf.size(), 0);
    rng::CounterStream s(900 + trial, 0, 0, 0, rng::Purpose::auxiliary);
    for (int i = 0; i < 50000; ++i) {
      const auto x = sample_site_offspring(kBernoulli, r, 0.1, n, K, s);
      ASSERT_LT(x, h.size());
      ++h[x];
    }
    EXPECT_GT(oracle::chi_square_pvalue(h, pmf), 1e-4) << n << ' ' << r << ' ' << K;
  }
}

TEST(SiteLaw, MonotoneInCount) {
  for (std::uint64_t K : std::initializer_list<std::uint64_t>{5, 30, kUnbounded}) {
    for (std::uint64_t n = 1; n < 20; ++n) {
      EXPECT_TRUE(stochastically_dominates(site_law_pmf(kBernoulli, 1.0, 0.1, n + 1, K),
                                           site_law_pmf(kBernoulli, 1.0, 0.1, n, K)))
          << n << ' ' << K;
    }
  }
}

TEST(SiteLaw, MonotoneInRateAndCapacity) {
  for (std::uint64_t n : {1ull, 4ull, 17ull}) {
    EXPECT_TRUE(stochastically_dominates(site_law_pmf(kBernoulli, 3.0, 0.1, n, 20),
                                         site_law_pmf(kBernoulli, 1.0, 0.1, n, 20)));
    EXPECT_TRUE(stochastically_dominates(site_law_pmf(kBernoulli, 1.0, 0.1, n, kUnbounded),
                                         site_law_pmf(kBernoulli, 1.0, 0.1, n, 10)));
    EXPECT_FALSE(stochastically_dominates(site_law_pmf(kBernoulli, 1.0, 0.1, n, 10),
                                          site_law_pmf(kBernoulli, 3.0, 0.1, n, kUnbounded)));
  }
}

TEST(Quantile, MonotoneAndConsistentWithPmf) {
  const auto pmf = site_law_pmf(kBernoulli, 2.0, 0.1, 9, 12);
  std::uint64_t previous = 0;
  for (int i = 1; i < 1000; ++i) {
    const double u = i / 1000.0;
    const auto q = offspring_quantile(kBernoulli, 2.0, 0.1, 9, 12, u);
    EXPECT_GE(q, previous);
    previous = q;
    double cdf = 0.0;
    for (std::size_t k = 0; k <= q; ++k) cdf += pmf[k];
    EXPECT_GE(cdf, u - 1e-12);
  }
}

TEST(Assumptions, DefaultFamilyPasses) {
  const auto r = check_assumptions(kBernoulli);
  EXPECT_TRUE(r.passed()) << r.summary();
  for (const auto& item : r.items) EXPECT_GT(item.trials, 0u) << item.name;
}

TEST(Assumptions, CustomFamilyNeedsCertification) {
  // Litter of 1 or 3: mean 1 + 2 r dt, monotone in r.
  auto good = OffspringFamily::custom(
      [](double r, double dt) { return std::vector<double>{0.0, 1.0 - r * dt, 0.0, r * dt}; }, "one-or-three");
  EXPECT_FALSE(good.certified());
  const auto certified = certify(good);
  EXPECT_TRUE(certified.certified());
  EXPECT_EQ(certified.label(), "one-or-three");
}

TEST(Assumptions, NonMonotoneFamilyRejected) {
  // More growth means fewer offspring: violates monotonicity in r.
  auto bad = OffspringFamily::custom(
      [](double r, double dt) { return std::vector<double>{0.0, r * dt, 1.0 - r * dt}; }, "inverted");
  EXPECT_FALSE(check_assumptions(bad).passed());
  EXPECT_THROW(certify(bad), HypothesisViolation);
}

}  // namespace
