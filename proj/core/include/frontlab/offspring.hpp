// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "frontlab/random.hpp"
#include "frontlab/report.hpp"

namespace frontlab {

/// Carrying capacity; kUnbounded means no competition.
inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

enum class FamilyKind { bernoulli_duplication, custom };

struct AssumptionGrid;

/// Individual offspring law nu_r, and the site law min(sum of n litters, K).
class OffspringFamily {
 public:
  /// pmf over litter sizes {0, ..., L} for growth rate r and time step dt.
  using IndividualPmf = std::function<std::vector<double>(double r, double dt)>;

  /// Each particle duplicates with probability r*dt.
  static OffspringFamily bernoulli_duplication();
  /// User-supplied family. Engines refuse it until certify() succeeds.
  static OffspringFamily custom(IndividualPmf pmf, std::string label);

  FamilyKind kind() const { return kind_; }
  bool certified() const { return certified_; }
  const std::string& label() const { return label_; }

  std::vector<double> individual_pmf(double r, double dt) const;
  double mean(double r, double dt) const;

 private:
  friend OffspringFamily certify(const OffspringFamily&, const AssumptionGrid&);
  FamilyKind kind_ = FamilyKind::bernoulli_duplication;
  bool certified_ = true;
  IndividualPmf pmf_;
  std::string label_;
};

/// Rejects r*dt outside [0, 1] or non-finite rates.
void require_duplication_probability(double r, double dt);

/// Exact pmf of the site law on {0, ..., support}; with finite K the last entry is K.
std::vector<double> site_law_pmf(const OffspringFamily& family, double r, double dt,
                                 std::uint64_t n, std::uint64_t K);

/// True if P(A >= t) >= P(B >= t) - tol for every t.
bool stochastically_dominates(const std::vector<double>& a, const std::vector<double>& b,
                              double tol = 1e-12);

/// Inverse-CDF draw from the site law using one uniform. Monotone in u.
std::uint64_t offspring_quantile(const OffspringFamily& family, double r, double dt,
                                 std::uint64_t n, std::uint64_t K, double u);

struct AssumptionGrid {
  std::vector<double> rates = {0.1, 0.5, 1.0, 2.0, 3.0};
  std::vector<std::uint64_t> counts = {1, 2, 3, 5, 8, 13, 20};
  std::vector<std::uint64_t> capacities = {1, 2, 5, 10, 20, 50};
  double dt = 0.1;
  double r_sup = 3.0;
};

/// Exact-CDF checks of the domination, monotonicity and min-with-K hypotheses.
CheckReport check_assumptions(const OffspringFamily& family, const AssumptionGrid& grid = {});

/// Runs check_assumptions and returns a certified copy, or throws HypothesisViolation.
OffspringFamily certify(const OffspringFamily& family, const AssumptionGrid& grid = {});

namespace detail {
template <class Stream>
std::uint64_t sum_of_litters(const std::vector<double>& pmf, std::uint64_t n, Stream& s) {
  std::uint64_t remaining = n, total = 0;
  double mass = 1.0;
  for (std::size_t k = 0; k + 1 < pmf.size() && remaining > 0; ++k) {
    const double p = mass > 0.0 ? std::min(1.0, pmf[k] / mass) : 1.0;
    const std::uint64_t b = rng::binomial(s, remaining, p);
    total += b * k;
    remaining -= b;
    mass -= pmf[k];
  }
  return total + remaining * (pmf.size() - 1);
}
}  // namespace detail

/// n + sum of n litters, without the capacity cap.
template <class Stream>
std::uint64_t sample_untruncated(const OffspringFamily& family, double r, double dt,
                                 std::uint64_t n, Stream& s) {
  if (family.kind() == FamilyKind::bernoulli_duplication) {
    require_duplication_probability(r, dt);
    return n + rng::binomial(s, n, r * dt);
  }
  return detail::sum_of_litters(family.individual_pmf(r, dt), n, s);
}

/// Site update min(offspring of n particles, K).
template <class Stream>
std::uint64_t sample_site_offspring(const OffspringFamily& family, double r, double dt,
                                    std::uint64_t n, std::uint64_t K, Stream& s) {
  const std::uint64_t total = sample_untruncated(family, r, dt, n, s);
  return total < K ? total : K;
}

}  // namespace frontlab
