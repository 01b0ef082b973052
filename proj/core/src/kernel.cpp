// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {
namespace {

constexpr double kTailTarget = 1e-12;
constexpr double kTruncationTolerance = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// P(Z > z) for standard normal Z.
double upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

void require_steps(double dt, double dx) {
  if (!(dt > 0.0) || !(dx > 0.0) || !std::isfinite(dt) || !std::isfinite(dx)) {
    throw ConfigurationError("step law: dt and dx must be positive and finite");
  }
}

}  // namespace

std::int64_t StepLaw::minimal_half_width(double dt, double dx) {
  require_steps(dt, dx);
  const double a = dx / std::sqrt(dt);
  auto J = static_cast<std::int64_t>(std::max(0.0, std::ceil(6.9 / a - 0.5)));
  while (J > 0 && 2.0 * upper_tail((static_cast<double>(J) - 0.5) * a) < kTailTarget) --J;
  while (2.0 * upper_tail((static_cast<double>(J) + 0.5) * a) >= kTailTarget) ++J;
  return J;
}

StepLaw::StepLaw(double dt, double dx) : dt_(dt), dx_(dx), J_(minimal_half_width(dt, dx)) {
  build();
}

StepLaw::StepLaw(double dt, double dx, std::int64_t half_width)
    : dt_(dt), dx_(dx), J_(half_width) {
  if (half_width < minimal_half_width(dt, dx)) {
    throw ConfigurationError("step law: half width below the 1e-12 tail requirement");
  }
  build();
}

void StepLaw::build() {
  const double a = dx_ / std::sqrt(dt_);
  const auto n = static_cast<std::size_t>(2 * J_ + 1);
  weights_.assign(n, 0.0);
  log_weights_.assign(n, -kInf);
  tail_ = 2.0 * upper_tail((static_cast<double>(J_) + 0.5) * a);

  // Tail-side differences of erfc for j >= 1; j = 0 takes the remainder.
  double side = 0.0;
  std::vector<double> half(static_cast<std::size_t>(J_) + 1, 0.0);
  for (std::int64_t j = J_; j >= 1; --j) {
    const double lo = (static_cast<double>(j) - 0.5) * a;
    const double hi = (static_cast<double>(j) + 0.5) * a;
    half[static_cast<std::size_t>(j)] = upper_tail(lo) - upper_tail(hi);
    side += half[static_cast<std::size_t>(j)];
  }
  half[0] = 1.0 - 2.0 * side;
  for (std::int64_t j = -J_; j <= J_; ++j) {
    const double w = half[static_cast<std::size_t>(std::llabs(j))];
    weights_[static_cast<std::size_t>(j + J_)] = w;
    log_weights_[static_cast<std::size_t>(j + J_)] = w > 0.0 ? std::log(w) : -kInf;
  }

  alias_ = rng::AliasTable(weights_);

  order_.clear();
  order_.push_back(0);
  for (std::int64_t j = 1; j <= J_; ++j) {
    order_.push_back(-j);
    order_.push_back(j);
  }
  // Conditional masses from suffix sums accumulated from the small end.
  conditional_.assign(order_.size(), 1.0);
  double suffix = 0.0;
  for (std::size_t k = order_.size(); k-- > 0;) {
    const double w = weights_[static_cast<std::size_t>(order_[k] + J_)];
    suffix += w;
    conditional_[k] = suffix > 0.0 ? std::min(1.0, w / suffix) : 1.0;
  }
  conditional_.back() = 1.0;
}

double StepLaw::weight(std::int64_t j) const {
  if (j < -J_ || j > J_) return 0.0;
  return weights_[static_cast<std::size_t>(j + J_)];
}

double StepLaw::log_weight(std::int64_t j) const {
  if (j < -J_ || j > J_) return -kInf;
  return log_weights_[static_cast<std::size_t>(j + J_)];
}

double log_mgf_gaussian(double dt, double lambda) { return 0.5 * dt * lambda * lambda; }
double rate_gaussian(double dt, double y) { return y * y / (2.0 * dt); }

namespace {

std::int64_t rate_half_width(double dt, double dx, double y_max) {
  const double reach = 6.5 * std::sqrt(dt) + 1.25 * y_max;
  const auto J = static_cast<std::int64_t>(std::ceil(reach / dx + 0.5));
  return std::max(J, StepLaw::minimal_half_width(dt, dx));
}

}  // namespace

RateFunction::RateFunction(double dt, double dx) : RateFunction(dt, dx, 6.0 * std::sqrt(dt)) {}

RateFunction::RateFunction(double dt, double dx, double y_max)
    : law_(dt, dx, rate_half_width(dt, dx, y_max)) {
  // Largest |lambda| with truncation error below tolerance.
  double lo = 0.0, hi = 1.0;
  while (truncation_error(hi) < kTruncationTolerance && hi < 1e12) hi *= 2.0;
  if (truncation_error(0.0) >= kTruncationTolerance) {
    throw NumericalError("rate function: truncation error exceeds tolerance at lambda = 0");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (truncation_error(mid) < kTruncationTolerance ? lo : hi) = mid;
  }
  lambda_guard_ = lo;
  y_reach_ = log_mgf_derivs(lambda_guard_).slope;
}

double RateFunction::truncation_error(double lambda) const {
  const double l = std::fabs(lambda);
  const double sd = std::sqrt(law_.dt());
  const double edge = (static_cast<double>(law_.J_trunc()) + 0.5) * law_.dx() / sd;
  return std::exp(l * law_.dx()) * upper_tail(edge - l * sd) + law_.tail_mass();
}

RateFunction::Derivs RateFunction::log_mgf_derivs(double lambda) const {
  if (std::fabs(lambda) > lambda_guard_ * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "log_mgf: |lambda| = " << std::fabs(lambda) << " exceeds overflow guard "
        << lambda_guard_;
    throw NumericalError(msg.str());
  }
  const auto& lw = law_.log_weights();
  const std::int64_t J = law_.J_trunc();
  const double h = law_.dx();
  double shift = -kInf;
  for (std::int64_t j = -J; j <= J; ++j) {
    shift = std::max(shift, lw[static_cast<std::size_t>(j + J)] + lambda * static_cast<double>(j) * h);
  }
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::int64_t j = -J; j <= J; ++j) {
    const double z = static_cast<double>(j) * h;
    const double e = std::exp(lw[static_cast<std::size_t>(j + J)] + lambda * z - shift);
    s0 += e;
    s1 += e * z;
    s2 += e * z * z;
  }
  const double mean = s1 / s0;
  return {shift + std::log(s0), mean, std::max(0.0, s2 / s0 - mean * mean)};
}

double RateFunction::log_mgf(double lambda) const { return log_mgf_derivs(lambda).value; }

double RateFunction::tilt(double y) const {
  const double ay = std::fabs(y);
  if (ay == 0.0) return 0.0;
  if (ay > y_reach_) return y > 0 ? kInf : -kInf;
  // Lambda' is increasing; bracket then Newton with bisection fallback.
  double lo = 0.0, hi = std::min(lambda_guard_, std::max(2.0 * ay / law_.dt(), 1e-8));
  while (log_mgf_derivs(hi).slope < ay) {
    lo = hi;
    hi = std::min(lambda_guard_, 2.0 * hi);
    if (lo == lambda_guard_) break;
  }
  double lam = std::clamp(ay / law_.dt(), lo, hi);
  for (int it = 0; it < 200; ++it) {
    const auto d = log_mgf_derivs(lam);
    const double g = d.slope - ay;
    if (g > 0) hi = lam; else lo = lam;
    double next = d.curvature > 0 ? lam - g / d.curvature : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - lam);
    lam = next;
    if (step < 1e-10 * std::max(1.0, lam) || hi - lo < 1e-14 * std::max(1.0, hi)) break;
  }
  return y > 0 ? lam : -lam;
}

double RateFunction::rate(double y) const {
  const double ay = std::fabs(y);
  if (ay == 0.0) return 0.0;
  if (ay > y_reach_) return kInf;
  const double lam = tilt(ay);
  return std::max(0.0, lam * ay - log_mgf(lam));
}

double gaussian_speed(double m, double dt) { return std::sqrt(2.0 * dt * std::log(m)); }

double solve_speed(const RateFunction& rate, double m) {
  if (!(m > 1.0) || !std::isfinite(m)) throw ConfigurationError("solve_speed: need m > 1");
  const double target = std::log(m);
  double lo = rate.dx() * 1e-6;
  double hi = 4.0 * gaussian_speed(m, rate.dt());
  if (rate.rate(lo) > target) throw NumericalError("solve_speed: lower bracket above log m");
  for (int k = 0; k < 60 && rate.rate(hi) < target; ++k) hi *= 2.0;
  if (rate.rate(hi) < target) throw NumericalError("solve_speed: no upper bracket");
  double c = std::min(0.5 * (lo + hi), gaussian_speed(m, rate.dt()));
  for (int it = 0; it < 400 && hi - lo > 1e-12; ++it) {
    const double val = rate.rate(c) - target;
    if (val > 0) hi = c; else lo = c;
    // I'(c) = lambda*(c); Newton inside the bracket, bisection otherwise.
    const double slope = rate.tilt(c);
    double next = (std::isfinite(val) && slope > 0) ? c - val / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - c) < 1e-14) {
      c = next;
      break;
    }
    c = next;
  }
  return c;
}

double solve_speed(double m, double dt, double dx) { return solve_speed(RateFunction(dt, dx), m); }

double speed_sensitivity(double r_sup, double r_inf) {
  return 16.0 / std::sqrt(kGamma) * std::sqrt(r_sup / r_inf);
}

CheckReport check_appendixA(double dt, double dx, const AppendixOptions& options) {
  const RateFunction I(dt, dx);
  CheckReport report;
  report.suite = "appendixA";
  rng::CounterStream draws(options.seed, 0, 0, 0, rng::Purpose::auxiliary);
  const double slack = 1e-10;
  auto where = [](const char* what, double a, double b = std::numeric_limits<double>::quiet_NaN()) {
    std::ostringstream s;
    s << what << '=' << a;
    if (!std::isnan(b)) s << ", " << b;
    return s.str();
  };

  // Lambda bracket around the Gaussian reference for lambda >= 0.
  auto& mgf = report.item("log_mgf_bracket");
  for (std::size_t k = 0; k < options.samples; ++k) {
    const double lam = draws.uniform() * I.lambda_guard();
    const double L = I.log_mgf(lam), L0 = log_mgf_gaussian(dt, lam);
    const double margin = std::min(L - (L0 - lam * dx / 2), (L0 + lam * dx / 2) - L);
    mgf.record(margin >= -slack * (1 + std::fabs(L)), margin, where("lambda", lam));
  }

  const double top = std::min(I.y_reach() / 2.0, 4.0 * gaussian_speed(2.0, dt));

  auto& a2 = report.item("rate_bracket");
  auto& conv = report.item("rate_convexity");
  auto& legendre = report.item("legendre_consistency");
  for (std::size_t k = 0; k < options.samples; ++k) {
    const double y = dx / 2 + draws.uniform() * std::max(0.0, top - dx / 2);
    const double val = I.rate(y);
    const double lo = rate_gaussian(dt, y - dx / 2), hi = rate_gaussian(dt, y + dx / 2);
    const double margin = std::min(val - lo, hi - val);
    a2.record(margin >= -slack * (1 + val), margin, where("y", y));

    const double h = 1e-3 * y;
    const double second = I.rate(y + h) - 2 * val + I.rate(y - h);
    conv.record(second >= -1e-9 * (1 + val), second, where("y", y));

    // sup over a lambda grid never exceeds I(y).
    const double lam_star = I.tilt(y);
    double best = -std::numeric_limits<double>::infinity();
    for (int g = 0; g <= 40; ++g) {
      const double lam = std::min(I.lambda_guard(), lam_star * (0.5 + g / 40.0));
      best = std::max(best, lam * y - I.log_mgf(lam));
    }
    legendre.record(best <= val + slack * (1 + val), val - best, where("y", y));
  }

  auto& a3 = report.item("speed_vs_gaussian");
  for (double m : options.growth_factors) {
    const double c0 = gaussian_speed(m, dt);
    if (!(dx < c0)) continue;
    const double c = solve_speed(I, m);
    const double margin = std::min(c - c0 / 2, 2 * c0 - c);
    a3.record(margin > 0, margin, where("m", m));
  }

  auto& a4 = report.item("rate_superlinear_growth");
  for (double eta : options.etas) {
    for (std::size_t k = 0; k < options.samples / 4 + 1; ++k) {
      const double y = 2 * dx + draws.uniform() * std::max(0.0, top / (1 + eta) - 2 * dx);
      if (!(dx < y / 2)) continue;
      const double lhs = I.rate(y) + y * y * eta / (4 * dt);
      const double rhs = I.rate((1 + eta) * y);
      a4.record(lhs <= rhs + slack * (1 + rhs), rhs - lhs, where("y", y, eta));
    }
  }

  auto& a5 = report.item("rate_lipschitz_below");
  for (std::size_t k = 0; k < options.samples / 2 + 1; ++k) {
    const double ybar = 2 * dx + draws.uniform() * std::max(0.0, top / 2 - 2 * dx);
    if (!(dx < ybar / 2)) continue;
    const double y1 = ybar + draws.uniform() * (top - ybar);
    const double y2 = ybar + draws.uniform() * (top - ybar);
    const double lhs = ybar / (4 * dt) * std::fabs(y1 - y2);
    const double rhs = std::fabs(I.rate(y1) - I.rate(y2));
    a5.record(lhs <= rhs + slack * (1 + rhs), rhs - lhs, where("y1", y1, y2));
  }
  return report;
}

}  // namespace frontlab
