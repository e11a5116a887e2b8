/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_REPORT_H_
#define POLYBRANCH_REPORT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polybranch {

// One (instance, approach) run.
struct RunRow {
  std::string instance;
  std::string approach;
  bool solved = false;
  std::optional<double> gap;  // min(abs, rel); empty without an incumbent
  double time = 0.0;          // seconds, or nodes in deterministic mode
  double pace = 0.0;
  int64_t nodes = 0;

  friend bool operator==(const RunRow&, const RunRow&) = default;
};

inline constexpr const char* kReportHeader = "instance,approach,solved,gap,time_s,pace,nodes";

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Comma-separated, header first. Numbers use the shortest representation
// that reads back exactly. Throws std::invalid_argument for names
// containing a comma or newline.
void WriteReport(const std::vector<RunRow>& rows, std::ostream& out);

// Throws ReportError naming the line or column on malformed input.
std::vector<RunRow> ReadReport(std::istream& in);

// Shortest round-trip decimal form of `value` ("inf", "-inf", "nan" for
// non-finite values).
std::string FormatDouble(double value);
// Parses a full-string double; nullopt on any trailing garbage.
std::optional<double> ParseDouble(std::string_view text);

}  // namespace polybranch

#endif  // POLYBRANCH_REPORT_H_
