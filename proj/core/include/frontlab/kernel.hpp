// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "frontlab/random.hpp"
#include "frontlab/report.hpp"

namespace frontlab {

/// Discretized Gaussian step law on the lattice dx*Z.
///
/// mu(j) = Phi((j+1/2) dx / sqrt(dt)) - Phi((j-1/2) dx / sqrt(dt)) for |j| <= J,
/// with the excluded two-sided tail folded into j = 0. Weights are exactly symmetric.
class StepLaw {
 public:
  /// Smallest support with excluded Gaussian mass below 1e-12.
  StepLaw(double dt, double dx);
  /// Explicit half-width; must be at least the minimal one.
  StepLaw(double dt, double dx, std::int64_t half_width);

  double dt() const { return dt_; }
  double dx() const { return dx_; }
  std::int64_t J_trunc() const { return J_; }
  std::size_t cells() const { return weights_.size(); }
  /// Gaussian mass outside [-J, J] before folding.
  double tail_mass() const { return tail_; }

  double weight(std::int64_t j) const;
  double log_weight(std::int64_t j) const;
  /// Weights indexed by j + J.
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

  /// Sampling helpers: alias table over j + J, and a centre-out order with
  /// conditional probabilities for sequential-binomial multinomial draws.
  const rng::AliasTable& alias() const { return alias_; }
  const std::vector<std::int64_t>& scatter_order() const { return order_; }
  const std::vector<double>& scatter_conditional() const { return conditional_; }

  /// Minimal half-width for (dt, dx).
  static std::int64_t minimal_half_width(double dt, double dx);

 private:
  void build();

  double dt_;
  double dx_;
  std::int64_t J_;
  double tail_ = 0.0;
  std::vector<double> weights_;
  std::vector<double> log_weights_;
  rng::AliasTable alias_;
  std::vector<std::int64_t> order_;
  std::vector<double> conditional_;
};

/// Gaussian reference quantities.
double log_mgf_gaussian(double dt, double lambda);  // dt*lambda^2/2
double rate_gaussian(double dt, double y);          // y^2/(2 dt)

/// Log moment generating function and its Legendre transform for a StepLaw.
///
/// Internally uses a support wide enough that the truncation error of Lambda is
/// below 1e-9 for every |y| <= y_max.
class RateFunction {
 public:
  RateFunction(double dt, double dx);
  RateFunction(double dt, double dx, double y_max);

  double dt() const { return law_.dt(); }
  double dx() const { return law_.dx(); }
  const StepLaw& law() const { return law_; }

  /// Lambda(lambda). Throws NumericalError beyond lambda_guard().
  double log_mgf(double lambda) const;
  /// Lambda, Lambda', Lambda'' in one pass.
  struct Derivs {
    double value;
    double slope;
    double curvature;
  };
  Derivs log_mgf_derivs(double lambda) const;

  /// I(y) = sup_lambda (lambda*y - Lambda(lambda)); +inf when |y| > y_reach().
  double rate(double y) const;
  /// Maximizer lambda*(y); equals I'(y). +inf beyond reach.
  double tilt(double y) const;

  /// Bound on the relative error of exp(Lambda) caused by truncation.
  double truncation_error(double lambda) const;
  double lambda_guard() const { return lambda_guard_; }
  double y_reach() const { return y_reach_; }

 private:
  StepLaw law_;
  double lambda_guard_ = 0.0;
  double y_reach_ = 0.0;
};

/// Unique c > 0 with I(c) = log m, by safeguarded bisection to 1e-12.
double solve_speed(const RateFunction& rate, double m);
double solve_speed(double m, double dt, double dx);
/// sqrt(2 dt log m).
double gaussian_speed(double m, double dt);

/// log 2.
inline constexpr double kGamma = 0.69314718055994530942;
/// a = 16 gamma^{-1/2} (r_sup / r_inf)^{1/2}, the lattice-speed sensitivity constant.
double speed_sensitivity(double r_sup, double r_inf);

struct AppendixOptions {
  std::size_t samples = 1000;
  std::vector<double> etas = {0.1, 0.5, 1.0};
  std::vector<double> growth_factors = {1.01, 1.05, 1.1, 1.3, 1.6, 2.0};
  std::uint64_t seed = 20260101;
};

/// Evaluates the lattice/Gaussian comparison inequalities on sampled points.
CheckReport check_appendixA(double dt, double dx, const AppendixOptions& options = {});

}  // namespace frontlab
