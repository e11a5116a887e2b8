/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "polybranch/report.h"

namespace polybranch {
namespace {

std::string Write(const std::vector<RunRow>& rows) {
  std::ostringstream out;
  WriteReport(rows, out);
  return out.str();
}

std::vector<RunRow> Read(const std::string& text) {
  std::istringstream in(text);
  return ReadReport(in);
}

std::string ErrorOf(const std::string& text) {
  try {
    Read(text);
  } catch (const ReportError& e) {
    return e.what();
  }
  return "";
}

TEST(ReportTest, RandomRowsRoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RunRow> rows;
  for (int i = 0; i < 100; ++i) {
    RunRow r;
    r.instance = "inst_" + std::to_string(i % 17);
    r.approach = "approach_" + std::to_string(i % 5);
    r.solved = u(rng) < 0.5;
    if (u(rng) < 0.8) r.gap = u(rng) * std::pow(10.0, -8.0 * u(rng));
    r.time = u(rng) * 600.0;
    r.pace = i % 13 == 0 ? 1e7 : std::exp(20.0 * u(rng) - 10.0);
    r.nodes = static_cast<int64_t>(u(rng) * 1e6);
    rows.push_back(r);
  }
  EXPECT_EQ(Read(Write(rows)), rows);
}

TEST(ReportTest, EmptyReportIsHeaderOnly) {
  const std::string text = Write({});
  EXPECT_EQ(text, std::string(kReportHeader) + "\n");
  EXPECT_TRUE(Read(text).empty());
}

TEST(ReportTest, MissingGapIsEmptyField) {
  RunRow r{"a", "dual", false, std::nullopt, 1.5, 3.0, 7};
  const std::string text = Write({r});
  EXPECT_NE(text.find("a,dual,0,,1.5,3,7"), std::string::npos);
  EXPECT_EQ(Read(text).front(), r);
}

TEST(ReportTest, Errors) {
  const std::string header = kReportHeader;
  EXPECT_EQ(ErrorOf(header + ",extra\n"), "unknown column 'extra'");
  EXPECT_NE(ErrorOf(header + "\na,b,1,0,1,1\n").find("line 2"), std::string::npos);
  EXPECT_NE(ErrorOf(header + "\na,b,1,0,1,1,1\na,b,2,0,1,1,1\n").find("line 3"),
            std::string::npos);
  EXPECT_NE(ErrorOf(header + "\na,b,1,x,1,1,1\n").find("bad gap"), std::string::npos);
  EXPECT_NE(ErrorOf(header + "\na,b,1,0,1,1,1.5\n").find("bad nodes"), std::string::npos);
  EXPECT_NE(ErrorOf("").find("missing header"), std::string::npos);
  EXPECT_NE(ErrorOf("instance,approach\n").find("expected header"), std::string::npos);

  RunRow bad{"a,b", "dual", true, 0.0, 1.0, 1.0, 1};
  std::ostringstream out;
  EXPECT_THROW(WriteReport({bad}, out), std::invalid_argument);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1e7), "1e+07");
  EXPECT_EQ(FormatDouble(1234567.0), "1234567");
  EXPECT_EQ(FormatDouble(INFINITY), "inf");
  EXPECT_EQ(FormatDouble(-INFINITY), "-inf");
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng);
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_FALSE(ParseDouble("1.5x").has_value());
  EXPECT_FALSE(ParseDouble("").has_value());
  EXPECT_EQ(ParseDouble("inf"), INFINITY);
}

}  // namespace
}  // namespace polybranch
