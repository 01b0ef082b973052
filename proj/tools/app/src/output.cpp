// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#include "frontlab/app/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab::app {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << text;
    if (!out) throw Error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRows>& traces) {
  std::ostringstream out;
  out << kTraceHeader << '\n';
  for (const auto& t : traces) {
    for (std::size_t i = 0; i < t.trace->size(); ++i) {
      out << t.replicate << ',' << t.trace->steps[i] << ',' << format_double(t.trace->times[i]) << ','
          << format_double(t.trace->positions[i]) << '\n';
    }
  }
  write_text(path, out.str());
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.trace << ',' << r.replicate << ',' << r.status << ',' << format_double(r.slope) << ','
        << format_double(r.stderr_) << '\n';
  }
  write_text(path, out.str());
}

}  // namespace frontlab::app
