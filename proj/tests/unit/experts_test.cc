/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <algorithm>

#include "polybranch/engine.h"
#include "polybranch/experts.h"
#include "polybranch/generator.h"
#include "support/fake_context.h"
#include "support/fixtures.h"

namespace polybranch {
namespace {

using testing::FakeContext;

CandidateKpi Kpi(int variable, double kpi) { return {variable, 0.5, 0.0, 0.0, kpi}; }

// Dual picks x3 (index 2); range and eigen pick x1 (index 0).
FakeContext SplitContext() {
  POProblem p;
  p.num_vars = 4;
  p.objective = Polynomial({{1.0, Multiset::FromIndices({0, 1})},
                            {1.0, Multiset::FromIndices({2, 3})}});
  p.lower.assign(4, 0.0);
  p.upper.assign(4, 1.0);
  BBNode node;
  node.bounds = NodeBounds::Root(p);
  node.lb = -1.0;
  node.primal = std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.4};
  node.column_dual_weight = {0, 0, 0, 0, 1.0, 10.0};
  return FakeContext(p, node);
}

double KpiOf(const std::vector<CandidateKpi>& table, int variable) {
  for (const CandidateKpi& c : table) {
    if (c.variable == variable) return c.kpi;
  }
  ADD_FAILURE() << "variable " << variable << " missing from the KPI table";
  return 0.0;
}

TEST(BVarSelectTest, Examples) {
  const std::vector<CandidateKpi> table = {Kpi(0, 0.1), Kpi(1, 0.2)};
  EXPECT_EQ(BVarSelect(table, 0.0, -0.5, 0), 1);

  const std::vector<CandidateKpi> small = {Kpi(0, 0.004), Kpi(1, 0.008)};
  EXPECT_EQ(BVarSelect(small, 0.01, -0.5, 0), 0);
  // Relative to |parent_lb| = 10 the improvement 0.05 is 0.005.
  const std::vector<CandidateKpi> scaled = {Kpi(0, 0.01), Kpi(1, 0.05)};
  EXPECT_EQ(BVarSelect(scaled, 0.01, -10.0, 0), 0);
  EXPECT_EQ(BVarSelect(scaled, 0.001, -10.0, 0), 1);

  const std::vector<CandidateKpi> tie = {Kpi(0, 0.2), Kpi(1, 0.2)};
  EXPECT_EQ(BVarSelect(tie, 0.0, 0.0, 1), 1);
  EXPECT_EQ(BVarSelect(tie, 0.0, 0.0, 3), 0);
  const std::vector<CandidateKpi> near_tie = {Kpi(0, 0.2), Kpi(1, 0.2 + 5e-10)};
  EXPECT_EQ(BVarSelect(near_tie, 0.0, 0.0, 0), 0);

  const std::vector<CandidateKpi> pruned = {Kpi(0, 0.3), Kpi(1, kInfinity), Kpi(2, 0.4)};
  EXPECT_EQ(BVarSelect(pruned, 0.0, 0.0, 0), 1);
  EXPECT_THROW(BVarSelect({}, 0.0, 0.0, 0), std::invalid_argument);
}

TEST(StrongBranchScanTest, SkipsFailedProbes) {
  FakeContext ctx = SplitContext();
  ctx.SetKpi(0, 0.1);
  ctx.SetKpi(1, 0.2, /*failed=*/true);
  ctx.SetKpi(2, 0.3);
  const std::vector<int> candidates = {0, 1, 2};
  const auto table = StrongBranchScan(ctx, candidates);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].variable, 0);
  EXPECT_EQ(table[1].variable, 2);
  EXPECT_EQ(table[1].kpi, 0.3);
}

TEST(BRuleSelectTest, HigherKpiRuleWins) {
  FakeContext ctx = SplitContext();
  ctx.SetKpi(0, 0.1);
  ctx.SetKpi(2, 0.3);
  const RuleScorer scorer(ctx.problem());
  const BRuleOutcome out = BRuleSelect(ctx, scorer, RuleId::kRangeRel);
  EXPECT_EQ(out.rule, RuleId::kDual);
  EXPECT_EQ(out.variable, 2);
  EXPECT_EQ(out.kpi, 0.3);
  EXPECT_EQ(out.choices.size(), 6u);
  EXPECT_EQ(out.probed.size(), 2u);
  EXPECT_EQ(ctx.probe_calls(0), 1);
  EXPECT_EQ(ctx.probe_calls(2), 1);
}

TEST(BRuleSelectTest, TieGoesToFallback) {
  FakeContext ctx = SplitContext();
  ctx.SetKpi(0, 0.1);
  ctx.SetKpi(2, 0.3);
  const RuleScorer scorer(ctx.problem());
  EXPECT_EQ(BRuleSelect(ctx, scorer, RuleId::kDualRel).rule, RuleId::kDualRel);

  FakeContext flat = SplitContext();
  flat.SetKpi(0, 0.0);
  flat.SetKpi(2, 0.0);
  const BRuleOutcome out = BRuleSelect(flat, scorer, RuleId::kRangeRel);
  EXPECT_EQ(out.rule, RuleId::kRangeRel);
  EXPECT_EQ(out.variable, 0);
}

TEST(BRuleSelectTest, UnanimousChoiceUsesFallbackLabel) {
  const POProblem p = testing::MakeP2();
  BBNode node;
  node.bounds = NodeBounds::Root(p);
  node.lb = -0.5;
  node.primal = std::vector<double>{0.5, 0.5, 0.5};
  node.column_dual_weight = {1, 1, 1};
  FakeContext ctx(p, node);
  ctx.SetKpi(0, 1.0 / 6.0);
  const RuleScorer scorer(p);
  const BRuleOutcome out = BRuleSelect(ctx, scorer, RuleId::kEigen);
  EXPECT_EQ(out.rule, RuleId::kEigen);
  EXPECT_EQ(out.variable, 0);
  EXPECT_EQ(ctx.probe_calls(0), 1);
  EXPECT_EQ(ctx.probe_calls(1), 0);
}

TEST(BRuleSelectTest, FailedProbesDropOut) {
  FakeContext ctx = SplitContext();
  ctx.SetKpi(0, 0.1);
  ctx.SetKpi(2, 0.3, /*failed=*/true);
  const RuleScorer scorer(ctx.problem());
  const BRuleOutcome out = BRuleSelect(ctx, scorer, RuleId::kDual);
  EXPECT_EQ(out.variable, 0);
  EXPECT_EQ(out.rule, RuleId::kRange);
}

TEST(ORuleSelectTest, Examples) {
  std::vector<RuleOutcome> outcomes;
  const double paces[] = {8.0, 4.0, 9.0, 5.0, 6.0, 7.0};
  for (int i = 0; i < 6; ++i) outcomes.push_back({kAllRules[i], false, paces[i], 10.0, 1.0, 5});
  EXPECT_EQ(ORuleSelect(outcomes), RuleId::kRange);

  for (auto& o : outcomes) o.pace = 5.0;
  outcomes[2].solved = true;
  outcomes[2].time = 3.0;
  outcomes[4].solved = true;
  outcomes[4].time = 2.0;
  EXPECT_EQ(ORuleSelect(outcomes), RuleId::kRangeRel);

  for (auto& o : outcomes) o = {o.rule, true, 1.0, 1.0, 0.0, 3};
  EXPECT_EQ(ORuleSelect(outcomes), RuleId::kDual);

  outcomes[0].gap.reset();
  EXPECT_EQ(ORuleSelect(outcomes), RuleId::kRange);
  EXPECT_EQ(ORuleSelect(outcomes, SelectionMetric::kNodes), RuleId::kRange);
  outcomes[5].nodes = 1;
  EXPECT_EQ(ORuleSelect(outcomes, SelectionMetric::kNodes), RuleId::kEigenRel);
  EXPECT_THROW(ORuleSelect({}), std::invalid_argument);
}

TEST(SelectionMetricTest, RoundTrip) {
  for (auto m : {SelectionMetric::kPace, SelectionMetric::kTime, SelectionMetric::kGap,
                 SelectionMetric::kNodes}) {
    EXPECT_EQ(ParseSelectionMetric(ToString(m)), m);
  }
  EXPECT_FALSE(ParseSelectionMetric("speed").has_value());
}

TEST(ExpertPolicyTest, BVarSolvesP2) {
  EngineConfig cfg;
  cfg.time_limit = kInfinity;
  cfg.policy = MakeBVarPolicy(RuleId::kRangeRel, 0.0, "bvar_d_fix");
  const SolveResult r = Solve(testing::MakeP2(), cfg);
  EXPECT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.best_ub, -0.25, 1e-3);
  EXPECT_EQ(r.policy_label, "bvar_d_fix");
  ASSERT_FALSE(r.node_log.empty());
  EXPECT_NEAR(KpiOf(r.node_log[0].candidates, 0), 1.0 / 6.0, 1e-9);
  EXPECT_NEAR(KpiOf(r.node_log[0].candidates, 1), 1.0 / 6.0, 1e-9);
  EXPECT_THROW(MakeBVarPolicy(RuleId::kDual, -1.0, "x"), std::invalid_argument);
}

// The node-level dominance properties that hold by construction.
TEST(ExpertPolicyTest, NodeLevelDominance) {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    const POProblem p = GenerateInstance({5, 3, 0.5, seed});
    EngineConfig cfg;
    cfg.time_limit = kInfinity;
    cfg.node_limit = 61;

    cfg.policy = MakeBVarPolicy(RuleId::kRangeRel, 0.0, "bvar_d_fix");
    const SolveResult bvar = Solve(p, cfg);
    ASSERT_NE(bvar.status, SolveStatus::kFailed);
    for (const NodeDecision& d : bvar.node_log) {
      ASSERT_FALSE(d.candidates.empty());
      EXPECT_EQ(d.kpi, KpiOf(d.candidates, d.variable));
      for (const CandidateKpi& c : d.candidates) EXPECT_GE(d.kpi, c.kpi);
      for (const RuleChoice& rc : d.rule_choices) {
        EXPECT_GE(d.kpi, KpiOf(d.candidates, rc.variable));
      }
    }

    cfg.policy = MakeBRulePolicy(RuleId::kRangeRel, "brule_d_fix");
    const SolveResult brule = Solve(p, cfg);
    ASSERT_NE(brule.status, SolveStatus::kFailed);
    for (const NodeDecision& d : brule.node_log) {
      ASSERT_EQ(d.rule_choices.size(), 6u);
      const auto fb = std::find_if(d.rule_choices.begin(), d.rule_choices.end(),
                                   [](const RuleChoice& c) { return c.rule == RuleId::kRangeRel; });
      EXPECT_EQ(d.kpi, KpiOf(d.candidates, d.variable));
      EXPECT_GE(d.kpi, KpiOf(d.candidates, fb->variable));
    }
  }
}

}  // namespace
}  // namespace polybranch
