// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frontlab {

/// Harmonic mean of sqrt(2 mu+) and sqrt(2 mu-): the limit speed of x' = sqrt(2r).
double c_ode(double mu_plus, double mu_minus);

/// Slowly-oscillating limit of the KPP spreading speed for the two-level field,
/// 2 sqrt2 [mu+^2 + mu-^2 + (mu+ + mu-) sqrt(D)] / (mu+ + mu- + 2 sqrt(D))^{3/2}
/// with D = mu+^2 + mu-^2 - mu+ mu-.
double c_star0(double mu_plus, double mu_minus);

/// Same expression with (mu+ - mu-) in place of (mu+ + mu-) in the numerator, as it
/// appears in the literature. Kept for reporting only.
double c_star0_literature_formula(double mu_plus, double mu_minus);

/// Value quoted in the literature for (mu+, mu-) = (3, 0.1).
inline constexpr double kCStar0LiteratureValue = 1.901;

/// sqrt(mu+ + mu-), the homogenized speed sqrt(2 <r>).
double homogenized_speed(double mu_plus, double mu_minus);

struct SpeedReport {
  double mu_plus = 0.0;
  double mu_minus = 0.0;
  double ode = 0.0;
  double homogenized = 0.0;
  double star0 = 0.0;
  double star0_literature_formula = 0.0;
  bool ordering_holds = false;  // ode < homogenized <= star0

  std::string text() const;
};

SpeedReport speed_report(double mu_plus, double mu_minus);

/// One (eps, K) cell of the particle ladder.
struct LadderCell {
  double eps = 0.0;
  std::uint64_t K = 0;
  std::vector<double> slopes;
  std::vector<std::string> status;
  double mean = 0.0;
  double stderr_ = 0.0;
  double seconds = 0.0;
};

struct ComparisonSettings {
  double mu_plus = 3.0;
  double mu_minus = 0.1;
  double period = 1.0;
  double dt = 0.02;
  double dx = 0.05;
  double t_end = 10.0;           // rescaled horizon
  double window_fraction = 0.6;  // trailing part used by the slope fit
  std::vector<double> eps_ladder = {0.2, 0.1, 0.05};
  std::uint64_t K_fixed = 1000;
  std::vector<std::uint64_t> K_ladder = {100, 10000, 1000000};
  double eps_fixed = 0.1;
  std::size_t replicates = 20;
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  double prune_depth = 40.0;     // unscaled distance kept behind the front
  double initial_extent = 60.0;  // unscaled length of the initially occupied half-line
  double band_lo = 0.68;
  double band_hi = 0.92;
  double z = 2.0;                // width of the comparison intervals in standard errors
};

struct TrendVerdict {
  bool consecutive_ok = false;
  bool overall_ok = false;
  bool band_ok = false;
  bool passed() const { return consecutive_ok && overall_ok && band_ok; }
  std::string detail;
};

struct EngineComparison {
  double ode_speed = 0.0;
  std::vector<LadderCell> eps_cells;  // K = K_fixed, eps decreasing
  std::vector<LadderCell> K_cells;    // eps = eps_fixed, K increasing
  TrendVerdict eps_trend;
  TrendVerdict K_trend;
};

/// Particle slopes on the eps and K ladders with the monotone-trend verdicts.
EngineComparison compare_engines(const ComparisonSettings& settings);

/// Verdict helpers; cells must be in ladder order.
/// decreasing_toward_band: monotone decrease, starting above the band and never
/// dropping below its lower edge. increasing_above: monotone increase ending above top.
TrendVerdict decreasing_toward_band(const std::vector<LadderCell>& cells, double lo, double hi, double z);
TrendVerdict increasing_above(const std::vector<LadderCell>& cells, double top, double z);

/// Runs one ladder cell and fills mean and standard error.
LadderCell run_ladder_cell(const ComparisonSettings& settings, double eps, std::uint64_t K);

}  // namespace frontlab
