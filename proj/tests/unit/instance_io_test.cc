/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <filesystem>

#include "polybranch/generator.h"
#include "polybranch/instance_io.h"
#include "support/fixtures.h"

namespace polybranch {
namespace {

constexpr const char* kP1Text = R"(# P1
vars 2
bounds 0 1 0 1
min: 1 x1*x2
c1: 1 x1 + 1 x2 >= 1
)";

int ErrorLine(const std::string& text) {
  try {
    ParseProblem(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseProblemTest, ReadsP1) {
  const POProblem p = ParseProblem(kP1Text, "P1");
  EXPECT_TRUE(p.SameContent(testing::MakeP1()));
  EXPECT_EQ(p.name, "P1");
}

TEST(ParseProblemTest, NegatesLessEqualRows) {
  const POProblem p = ParseProblem(
      "vars 2\nbounds 0 1 0 1\nmin: -1 x1*x2\nc1: 1 x1 + 1 x2 <= 1\n");
  EXPECT_TRUE(p.SameContent(testing::MakeP2()));
}

TEST(ParseProblemTest, MergesDuplicateTerms) {
  const POProblem p =
      ParseProblem("vars 2\nbounds 0 1 0 1\nmin: 1 x1*x2 + 2 x1*x2\n");
  ASSERT_EQ(p.objective.terms().size(), 1u);
  EXPECT_EQ(p.objective.terms()[0].coefficient, 3.0);
}

TEST(ParseProblemTest, PowersAndEqualities) {
  const POProblem p = ParseProblem(
      "vars 3\nbounds 0 1 0 2 0 3\nmin: 2 x1^2*x3 - 0.5 x2 + 4\nc1: 1 x1*x2 = 0.25\n");
  EXPECT_EQ(p.Degree(), 3);
  ASSERT_EQ(p.equalities.size(), 1u);
  EXPECT_EQ(p.equalities[0].rhs, 0.25);
  EXPECT_EQ(p.objective.ConstantTerm(), 4.0);
  EXPECT_EQ(p.EvaluateObjective(std::vector<double>{1.0, 2.0, 3.0}), 2 * 3.0 - 1.0 + 4.0);
}

TEST(ParseProblemTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 0 1\nmin: 1 x1*x3\n"), 3);
  try {
    ParseProblem("vars 2\nbounds 0 1 0 1\nmin: 1 x1*x3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.message(), "unknown variable x3");
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 1 0\nmin: 1 x1\n"), 2);
  EXPECT_EQ(ErrorLine("vars 2\n\n# comment\nbounds 0 1 0 1\nmin: 1 x1 +\n"), 5);
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 0 1\nmin: 1 x1\nc1: 1 x1 >\n"), 4);
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 0 1\nmin: one x1\n"), 3);
  EXPECT_EQ(ErrorLine("bounds 0 1\n"), 1);
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 0 1\nobjective 1 x1\n"), 3);
  EXPECT_EQ(ErrorLine("vars 2\nbounds 0 1 0 1\n"), 0);
  EXPECT_EQ(ErrorLine("vars 1\nbounds 0 1\nmin: 1 x1^0\n"), 3);
}

TEST(WriteProblemTest, RoundTripsGeneratedInstances) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorParams params{static_cast<int>(2 + seed % 5), static_cast<int>(2 + seed % 3),
                           0.2 + 0.1 * static_cast<double>(seed % 8), seed};
    const POProblem p = GenerateInstance(params);
    const std::string text = WriteProblem(p);
    const POProblem back = ParseProblem(text, p.name);
    EXPECT_TRUE(back.SameContent(p)) << text;
    EXPECT_EQ(WriteProblem(back), text);
  }
}

TEST(WriteProblemTest, RoundTripsAwkwardCoefficients) {
  POProblem p = testing::MakeP1();
  p.objective = Polynomial({{0.1, Multiset::FromIndices({0, 1})},
                            {-1e-17, Multiset::FromIndices({0})},
                            {1.0 / 3.0, Multiset()}});
  p.equalities.push_back({Polynomial::Variable(1, -2.5), -0.75});
  p.upper = {1.25, 3.0};
  const POProblem back = ParseProblem(WriteProblem(p));
  EXPECT_TRUE(back.SameContent(p)) << WriteProblem(p);
}

TEST(ProblemFileTest, NameIsStem) {
  const auto dir = std::filesystem::temp_directory_path() / "polybranch_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "p1.pop";
  WriteProblemFile(testing::MakeP1(), path);
  const POProblem p = ReadProblemFile(path);
  EXPECT_EQ(p.name, "p1");
  EXPECT_TRUE(p.SameContent(testing::MakeP1()));
  EXPECT_THROW(ReadProblemFile(dir / "missing.pop"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace polybranch
