// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/env.hpp"

#include <cmath>
#include <limits>

#include "frontlab/error.hpp"

namespace frontlab {
namespace {

void require_rates(double r_inf, double r_sup) {
  if (!(r_inf > 0.0) || !(r_sup >= r_inf) || !std::isfinite(r_sup)) {
    throw ConfigurationError("environment: need 0 < r_inf <= r_sup < inf");
  }
}

constexpr std::size_t kMaxFindingsPerKind = 16;

}  // namespace

Environment Environment::constant(double r) {
  require_rates(r, r);
  Environment env;
  env.kind_ = EnvKind::constant;
  env.r_inf_ = env.r_sup_ = r;
  env.mu_plus_ = env.mu_minus_ = r;
  env.lipschitz_ = 0.0;
  env.label_ = "constant";
  return env;
}

Environment Environment::periodic_piecewise(double period, double mu_plus, double mu_minus) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigurationError("environment: period must be positive and finite");
  }
  if (!(mu_plus >= mu_minus)) {
    throw ConfigurationError("environment: periodic_piecewise needs mu_plus >= mu_minus");
  }
  require_rates(mu_minus, mu_plus);
  Environment env;
  env.kind_ = EnvKind::periodic_piecewise;
  env.period_ = period;
  env.mu_plus_ = mu_plus;
  env.mu_minus_ = mu_minus;
  env.r_inf_ = mu_minus;
  env.r_sup_ = mu_plus;
  env.lipschitz_ = mu_plus == mu_minus ? 0.0 : std::numeric_limits<double>::infinity();
  env.label_ = "periodic_piecewise";
  return env;
}

Environment Environment::smooth(Callable r, double r_inf, double r_sup, double lipschitz,
                                std::string label) {
  require_rates(r_inf, r_sup);
  if (!r) throw ConfigurationError("environment: empty callable");
  if (!(lipschitz >= 0.0)) throw ConfigurationError("environment: Lipschitz constant must be >= 0");
  Environment env;
  env.kind_ = EnvKind::smooth_callable;
  env.fn_ = std::move(r);
  env.r_inf_ = r_inf;
  env.r_sup_ = r_sup;
  env.lipschitz_ = lipschitz;
  env.label_ = std::move(label);
  return env;
}

double Environment::evaluate(double t, double x) const {
  if (t < 0.0) throw ConfigurationError("environment: evaluated at negative time");
  switch (kind_) {
    case EnvKind::constant:
      return r_inf_;
    case EnvKind::periodic_piecewise: {
      double s = x - period_ * std::floor(x / period_);
      if (s >= period_) s -= period_;
      if (s < 0.0) s += period_;
      return s < 0.5 * period_ ? mu_plus_ : mu_minus_;
    }
    case EnvKind::smooth_callable:
      return fn_(t, x);
  }
  return r_inf_;
}

EnvValidationReport validate(const Environment& env, const SampleGrid& grid) {
  if (grid.nt == 0 || grid.nx == 0 || grid.t_min < 0.0 || grid.t_max < grid.t_min ||
      grid.x_max < grid.x_min) {
    throw ConfigurationError("validate: malformed sample grid");
  }
  EnvValidationReport report;
  const double dt = grid.nt > 1 ? (grid.t_max - grid.t_min) / static_cast<double>(grid.nt - 1) : 0.0;
  const double dx = grid.nx > 1 ? (grid.x_max - grid.x_min) / static_cast<double>(grid.nx - 1) : 0.0;
  const double lo = env.r_inf() * (1.0 - 1e-12);
  const double hi = env.r_sup() * (1.0 + 1e-12);
  const double L = env.lipschitz_L();
  const bool check_lipschitz = std::isfinite(L);

  std::size_t bound_kept = 0, lip_kept = 0;
  std::vector<double> prev_row(grid.nx);
  for (std::size_t a = 0; a < grid.nt; ++a) {
    const double t = grid.t_min + dt * static_cast<double>(a);
    double prev_g = 0.0;
    for (std::size_t b = 0; b < grid.nx; ++b) {
      const double x = grid.x_min + dx * static_cast<double>(b);
      const double r = env.evaluate(t, x);
      ++report.samples;
      if (!(r >= lo && r <= hi)) {
        ++report.bound_violations;
        if (bound_kept++ < kMaxFindingsPerKind) {
          report.findings.push_back({"bound", t, x, r, r < lo ? env.r_inf() : env.r_sup()});
        }
      }
      const double g = std::sqrt(2.0 * std::max(r, 0.0));
      if (check_lipschitz) {
        const double tol = 1e-12 * (1.0 + g);
        if (b > 0 && std::fabs(g - prev_g) > L * dx * (1.0 + 1e-9) + tol) {
          ++report.lipschitz_violations;
          if (lip_kept++ < kMaxFindingsPerKind) {
            report.findings.push_back({"lipschitz", t, x, std::fabs(g - prev_g) / dx, L});
          }
        }
        if (a > 0 && std::fabs(g - prev_row[b]) > L * dt * (1.0 + 1e-9) + tol) {
          ++report.lipschitz_violations;
          if (lip_kept++ < kMaxFindingsPerKind) {
            report.findings.push_back({"lipschitz", t, x, std::fabs(g - prev_row[b]) / dt, L});
          }
        }
      }
      prev_g = g;
      prev_row[b] = g;
    }
  }
  if (env.kind() == EnvKind::periodic_piecewise && env.mu_plus() != env.mu_minus()) {
    report.c1_hypothesis_met = false;
    report.note = "discontinuous — C¹ hypothesis not met";
  }
  return report;
}

}  // namespace frontlab
