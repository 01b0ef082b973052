// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace frontlab {

enum class EnvKind { constant, periodic_piecewise, smooth_callable };

/// Space-time growth-rate field r(t, x), evaluated in macroscopic coordinates.
///
/// The rescaling parameter is not stored here; engines evaluate r(eps*t, eps*x).
class Environment {
 public:
  using Callable = std::function<double(double t, double x)>;

  static Environment constant(double r);
  /// r = mu_plus on [0, P/2) and mu_minus on [P/2, P), extended P-periodically in x.
  static Environment periodic_piecewise(double period, double mu_plus, double mu_minus);
  /// Arbitrary callable with declared bounds and Lipschitz constant of sqrt(2r).
  static Environment smooth(Callable r, double r_inf, double r_sup, double lipschitz,
                            std::string label = "smooth");

  /// r(t, x). Throws ConfigurationError for t < 0.
  double evaluate(double t, double x) const;

  EnvKind kind() const { return kind_; }
  double r_inf() const { return r_inf_; }
  double r_sup() const { return r_sup_; }
  /// Lipschitz constant of sqrt(2r); +inf for the periodic piecewise field.
  double lipschitz_L() const { return lipschitz_; }
  bool is_homogeneous() const { return kind_ == EnvKind::constant; }

  double period() const { return period_; }
  double mu_plus() const { return mu_plus_; }
  double mu_minus() const { return mu_minus_; }
  const std::string& label() const { return label_; }

 private:
  Environment() = default;

  EnvKind kind_ = EnvKind::constant;
  double r_inf_ = 0.0;
  double r_sup_ = 0.0;
  double lipschitz_ = 0.0;
  double period_ = 0.0;
  double mu_plus_ = 0.0;
  double mu_minus_ = 0.0;
  Callable fn_;
  std::string label_;
};

/// Tensor grid of sample points for validate().
struct SampleGrid {
  double t_min = 0.0;
  double t_max = 10.0;
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t nt = 10000;
  std::size_t nx = 10000;
};

struct EnvFinding {
  std::string kind;  // "bound" or "lipschitz"
  double t = 0.0;
  double x = 0.0;
  double observed = 0.0;
  double allowed = 0.0;
};

struct EnvValidationReport {
  std::size_t samples = 0;
  std::size_t bound_violations = 0;
  std::size_t lipschitz_violations = 0;
  bool c1_hypothesis_met = true;
  std::string note;
  std::vector<EnvFinding> findings;  // first few of each kind

  bool ok() const { return bound_violations == 0 && lipschitz_violations == 0; }
};

EnvValidationReport validate(const Environment& env, const SampleGrid& grid = {});

}  // namespace frontlab
