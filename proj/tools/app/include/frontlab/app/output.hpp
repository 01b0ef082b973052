// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "frontlab/population.hpp"

namespace frontlab::app {

/// Trace CSV header. Columns never change order.
inline constexpr const char* kTraceHeader = "replicate,generation,time_rescaled,front_rescaled";
/// summary.csv header.
inline constexpr const char* kSummaryHeader = "trace,replicate,status,slope,stderr";

/// 17 significant digits, '.' separator; non-finite values as nan / inf / -inf.
std::string format_double(double value);

struct TraceRows {
  std::uint32_t replicate = 0;
  const FrontTrace* trace = nullptr;
};

/// Writes one CSV with the given traces in order. LF line endings.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRows>& traces);

struct SummaryRow {
  std::string trace;
  std::uint32_t replicate = 0;
  std::string status = "ok";
  double slope = 0.0;
  double stderr_ = 0.0;
};

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

/// Writes text to path atomically enough for a single writer (temp file, then rename).
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace frontlab::app
