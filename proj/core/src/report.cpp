// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frontlab {

void CheckItem::record(bool ok, double margin, const std::string& where) {
  ++trials;
  if (trials == 1 || margin < worst_margin) worst_margin = margin;
  if (!ok) {
    if (failures == 0) detail = where;
    ++failures;
  }
}

void CheckItem::compare_upper(double observed_value, double bound_value, double sigma_value, double z) {
  observed = observed_value;
  bound = bound_value;
  sigma = sigma_value;
  const double margin = bound_value + z * sigma_value - observed_value;
  std::ostringstream where;
  where << "observed " << observed_value << " > bound " << bound_value << " + " << z << " * " << sigma_value;
  record(margin >= 0.0, margin, where.str());
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.passed(); });
}

CheckItem& CheckReport::item(const std::string& name) {
  for (auto& i : items) {
    if (i.name == name) return i;
  }
  CheckItem fresh;
  fresh.name = name;
  items.push_back(fresh);
  return items.back();
}

std::string CheckReport::summary() const {
  std::ostringstream out;
  out << "suite " << suite << ": " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& i : items) {
    out << "  " << (i.passed() ? "ok  " : "FAIL") << ' ' << i.name << "  trials=" << i.trials
        << " failures=" << i.failures << " worst_margin=" << i.worst_margin;
    if (std::isfinite(i.observed)) {
      out << " observed=" << i.observed << " bound=" << i.bound << " sigma=" << i.sigma;
      if (i.sigma > 0.0) out << " (" << (i.observed - i.bound) / i.sigma << " sigma)";
    }
    if (!i.detail.empty()) out << "  first_failure: " << i.detail;
    out << '\n';
  }
  return out.str();
}

}  // namespace frontlab
