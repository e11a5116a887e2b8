/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/report.h"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace polybranch {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::optional<double> ParseDouble(std::string_view text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (std::isnan(value)) return std::nullopt;
  return value;
}

namespace {

constexpr std::array<std::string_view, 7> kColumns = {"instance", "approach", "solved", "gap",
                                                      "time_s",   "pace",     "nodes"};

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void CheckName(const std::string& name) {
  if (name.find_first_of(",\n\r") != std::string::npos) {
    throw std::invalid_argument("name contains a separator: " + name);
  }
}

}  // namespace

void WriteReport(const std::vector<RunRow>& rows, std::ostream& out) {
  out << kReportHeader << '\n';
  for (const RunRow& r : rows) {
    CheckName(r.instance);
    CheckName(r.approach);
    out << r.instance << ',' << r.approach << ',' << (r.solved ? 1 : 0) << ','
        << (r.gap ? FormatDouble(*r.gap) : "") << ',' << FormatDouble(r.time) << ','
        << FormatDouble(r.pace) << ',' << r.nodes << '\n';
  }
}

std::vector<RunRow> ReadReport(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ReportError("empty report: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = SplitCsv(line);
  for (const std::string& name : header) {
    bool known = false;
    for (std::string_view c : kColumns) known = known || c == name;
    if (!known) throw ReportError("unknown column '" + name + "'");
  }
  if (line != kReportHeader) {
    throw ReportError(std::string("expected header '") + kReportHeader + "'");
  }

  std::vector<RunRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) -> ReportError {
      return ReportError("line " + std::to_string(line_no) + ": " + what);
    };
    const std::vector<std::string> f = SplitCsv(line);
    if (f.size() != kColumns.size()) throw fail("expected 7 fields");
    RunRow row;
    row.instance = f[0];
    row.approach = f[1];
    if (f[2] == "1") {
      row.solved = true;
    } else if (f[2] != "0") {
      throw fail("solved must be 0 or 1");
    }
    if (!f[3].empty()) {
      row.gap = ParseDouble(f[3]);
      if (!row.gap) throw fail("bad gap '" + f[3] + "'");
    }
    const auto time = ParseDouble(f[4]);
    const auto pace = ParseDouble(f[5]);
    if (!time) throw fail("bad time_s '" + f[4] + "'");
    if (!pace) throw fail("bad pace '" + f[5] + "'");
    row.time = *time;
    row.pace = *pace;
    const auto [ptr, ec] = std::from_chars(f[6].data(), f[6].data() + f[6].size(), row.nodes);
    if (ec != std::errc() || ptr != f[6].data() + f[6].size()) {
      throw fail("bad nodes '" + f[6] + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace polybranch
