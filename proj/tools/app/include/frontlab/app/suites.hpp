// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab/report.hpp"

namespace frontlab::app {

struct SuiteOptions {
  std::size_t threads = 1;
  /// Multiplies Monte Carlo sample sizes; 1 gives the documented sizes.
  double scale = 1.0;
  std::uint64_t seed = 20260101;
};

/// Declared suites, in the order `frontlab check all` runs them.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws ConfigurationError for an unknown name.
CheckReport run_property_suite(const std::string& name, const SuiteOptions& options = {});

/// Structured form of a report: per-item trials, failures, margins and statistics.
nlohmann::ordered_json report_to_json(const CheckReport& report);

/// Bound of the tail estimate: h(eta) exp(-sqrt(2 gamma r_inf) A / 8) with
/// h(eta) = e^{-gamma r_inf dt eta / 8} / (1 - e^{-gamma r_inf dt eta / 8}).
double tail_bound(double r_inf, double dt, double eta, double A);
/// K^{log(1 + r_sup dt) - 1}.
double capacity_bound(std::uint64_t K, double r_sup, double dt);
/// 2 h~(x) with h~(x) = e^{-gamma sqrt(r_sup) x / (4 sqrt 2)} / (1 - e^{...}).
double escape_bound(double r_sup, double x);

}  // namespace frontlab::app
