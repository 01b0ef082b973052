// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "frontlab/error.hpp"
#include "frontlab/sim.hpp"

namespace frontlab {

SpeedEstimate fit_line(const std::vector<double>& t, const std::vector<double>& x) {
  const std::size_t n = t.size();
  if (n != x.size() || n < 3) throw NumericalError("fit_line: need at least 3 paired points");
  double mt = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(x[i])) throw NumericalError("fit_line: non-finite point");
    mt += t[i];
    mx += x[i];
  }
  mt /= static_cast<double>(n);
  mx /= static_cast<double>(n);
  double stt = 0.0, stx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    stx += (t[i] - mt) * (x[i] - mx);
  }
  if (!(stt > 0.0)) throw NumericalError("fit_line: degenerate time axis");
  SpeedEstimate e;
  e.points = n;
  e.slope = stx / stt;
  e.intercept = mx - e.slope * mt;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = x[i] - (e.intercept + e.slope * t[i]);
    ssr += res * res;
  }
  e.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / stt);
  return e;
}

SpeedEstimate estimate_speed(const FrontTrace& trace, double window_fraction) {
  if (trace.size() < 10) throw NumericalError("estimate_speed: trace shorter than 10 points");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw NumericalError("estimate_speed: window fraction must lie in (0, 1]");
  }
  const double t_end = trace.times.back();
  const double t_start = t_end - window_fraction * (t_end - trace.times.front());
  std::vector<double> t, x;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.times[i] >= t_start) {
      t.push_back(trace.times[i]);
      x.push_back(trace.positions[i]);
    }
  }
  if (t.size() < 3) throw NumericalError("estimate_speed: window holds fewer than 3 points");
  return fit_line(t, x);
}

}  // namespace frontlab
