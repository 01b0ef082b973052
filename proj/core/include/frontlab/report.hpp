// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <string>

namespace frontlab {

/// One family of inequality checks evaluated at many sample points.
struct CheckItem {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_margin = 0.0;  // most negative slack seen (>= 0 means all held)
  std::string detail;         // first failure, if any

  // Statistical checks: observed value against bound, and the standard error used.
  double observed = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();

  bool passed() const { return failures == 0; }
  void record(bool ok, double margin, const std::string& where);
  /// One-sided test observed <= bound + z * sigma.
  void compare_upper(double observed_value, double bound_value, double sigma_value, double z = 3.0);
};

struct CheckReport {
  std::string suite;
  std::deque<CheckItem> items;  // deque: references from item() stay valid

  bool passed() const;
  /// Finds or appends the named item.
  CheckItem& item(const std::string& name);
  std::string summary() const;
};

}  // namespace frontlab
