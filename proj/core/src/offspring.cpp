// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

OffspringFamily OffspringFamily::bernoulli_duplication() {
  OffspringFamily f;
  f.kind_ = FamilyKind::bernoulli_duplication;
  f.certified_ = true;
  f.label_ = "bernoulli_duplication";
  return f;
}

OffspringFamily OffspringFamily::custom(IndividualPmf pmf, std::string label) {
  if (!pmf) throw ConfigurationError("offspring: empty custom pmf");
  OffspringFamily f;
  f.kind_ = FamilyKind::custom;
  f.certified_ = false;
  f.pmf_ = std::move(pmf);
  f.label_ = std::move(label);
  return f;
}

void require_duplication_probability(double r, double dt) {
  const double p = r * dt;
  if (!(p >= 0.0) || p > 1.0 || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "offspring: duplication probability r*dt = " << p << " outside [0, 1]";
    throw ConfigurationError(msg.str());
  }
}

std::vector<double> OffspringFamily::individual_pmf(double r, double dt) const {
  if (kind_ == FamilyKind::bernoulli_duplication) {
    require_duplication_probability(r, dt);
    return {0.0, 1.0 - r * dt, r * dt};
  }
  auto pmf = pmf_(r, dt);
  if (pmf.empty()) throw ConfigurationError("offspring: custom pmf is empty");
  double total = 0.0;
  for (double v : pmf) {
    if (!(v >= 0.0)) throw ConfigurationError("offspring: custom pmf has a negative entry");
    total += v;
  }
  if (std::fabs(total - 1.0) > 1e-9) throw ConfigurationError("offspring: custom pmf not normalized");
  return pmf;
}

double OffspringFamily::mean(double r, double dt) const {
  const auto pmf = individual_pmf(r, dt);
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += static_cast<double>(k) * pmf[k];
  return m;
}

namespace {

std::vector<double> binomial_pmf(std::uint64_t n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double nd = static_cast<double>(n);
  const double lg = std::lgamma(nd + 1.0), lp = std::log(p), lq = std::log1p(-p);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    pmf[k] = std::exp(lg - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) + kd * lp + (nd - kd) * lq);
  }
  return pmf;
}

// Convolution with everything at or above cap folded into cap.
std::vector<double> convolve_capped(const std::vector<double>& a, const std::vector<double>& b,
                                    std::uint64_t cap) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t len = cap == kUnbounded ? full : std::min<std::size_t>(full, cap + 1);
  std::vector<double> out(len, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[std::min(i + j, len - 1)] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<double> fold_at(std::vector<double> pmf, std::uint64_t cap) {
  if (cap == kUnbounded || pmf.size() <= cap + 1) return pmf;
  const double over = std::accumulate(pmf.begin() + static_cast<std::ptrdiff_t>(cap), pmf.end(), 0.0);
  pmf.resize(cap + 1);
  pmf[cap] = over;
  return pmf;
}

std::vector<double> nfold_capped(const std::vector<double>& base, std::uint64_t n, std::uint64_t cap) {
  std::vector<double> result{1.0};
  std::vector<double> power = fold_at(base, cap);
  while (n > 0) {
    if (n & 1u) result = convolve_capped(result, power, cap);
    n >>= 1u;
    if (n > 0) power = convolve_capped(power, power, cap);
  }
  return result;
}

}  // namespace

std::vector<double> site_law_pmf(const OffspringFamily& family, double r, double dt,
                                 std::uint64_t n, std::uint64_t K) {
  if (family.kind() == FamilyKind::bernoulli_duplication) {
    require_duplication_probability(r, dt);
    const auto b = binomial_pmf(n, r * dt);
    std::vector<double> pmf(n + b.size(), 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) pmf[n + k] = b[k];
    return fold_at(std::move(pmf), K);
  }
  return nfold_capped(family.individual_pmf(r, dt), n, K);
}

bool stochastically_dominates(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  const std::size_t len = std::max(a.size(), b.size());
  double sa = 0.0, sb = 0.0;
  for (std::size_t t = len; t-- > 0;) {
    sa += t < a.size() ? a[t] : 0.0;
    sb += t < b.size() ? b[t] : 0.0;
    if (sa < sb - tol) return false;
  }
  return true;
}

std::uint64_t offspring_quantile(const OffspringFamily& family, double r, double dt,
                                 std::uint64_t n, std::uint64_t K, double u) {
  if (family.kind() == FamilyKind::bernoulli_duplication) {
    require_duplication_probability(r, dt);
    const std::uint64_t total = n + rng::binomial_quantile(n, r * dt, u);
    return std::min(total, K);
  }
  return rng::discrete_quantile(site_law_pmf(family, r, dt, n, K), u);
}

CheckReport check_assumptions(const OffspringFamily& family, const AssumptionGrid& grid) {
  CheckReport report;
  report.suite = "offspring_assumptions";
  const double dt = grid.dt;
  auto where = [](double r, std::uint64_t n, std::uint64_t K) {
    std::ostringstream s;
    s << "r=" << r << " n=" << n << " K=" << K;
    return s.str();
  };
  auto& untruncated = report.item("untruncated_dominates_site_law");
  auto& saturated = report.item("full_capacity_dominates_site_law");
  auto& in_rate = report.item("monotone_in_rate");
  auto& in_count = report.item("monotone_in_count");
  auto& capped = report.item("min_with_capacity_identity");

  std::vector<double> rates = grid.rates;
  std::sort(rates.begin(), rates.end());
  for (double r : rates) {
    const auto ind = family.individual_pmf(r, dt);
    for (std::uint64_t K : grid.capacities) {
      for (std::uint64_t n : grid.counts) {
        const auto site = site_law_pmf(family, r, dt, n, K);
        const auto free = nfold_capped(ind, n, kUnbounded);
        untruncated.record(stochastically_dominates(free, site), 0.0, where(r, n, K));

        // Identity: folding the free law at K reproduces the site law.
        const auto folded = fold_at(free, K);
        double diff = 0.0;
        for (std::size_t t = 0; t < std::max(folded.size(), site.size()); ++t) {
          const double x = t < folded.size() ? folded[t] : 0.0;
          const double y = t < site.size() ? site[t] : 0.0;
          diff = std::max(diff, std::fabs(x - y));
        }
        capped.record(diff < 1e-12, -diff, where(r, n, K));

        if (n <= K) {
          const auto top = nfold_capped(family.individual_pmf(grid.r_sup, dt), K, kUnbounded);
          saturated.record(stochastically_dominates(top, site), 0.0, where(r, n, K));
        }
        for (double r2 : rates) {
          if (r2 <= r) continue;
          const auto higher = site_law_pmf(family, r2, dt, n, K);
          in_rate.record(stochastically_dominates(higher, site), 0.0, where(r2, n, K));
        }
        for (std::uint64_t n2 : grid.counts) {
          if (n2 <= n) continue;
          const auto more = site_law_pmf(family, r, dt, n2, K);
          in_count.record(stochastically_dominates(more, site), 0.0, where(r, n2, K));
        }
      }
    }
  }
  return report;
}

OffspringFamily certify(const OffspringFamily& family, const AssumptionGrid& grid) {
  const auto report = check_assumptions(family, grid);
  if (!report.passed()) {
    throw HypothesisViolation("offspring family '" + family.label() +
                              "' failed assumption checks:\n" + report.summary());
  }
  OffspringFamily copy = family;
  copy.certified_ = true;
  return copy;
}

}  // namespace frontlab
