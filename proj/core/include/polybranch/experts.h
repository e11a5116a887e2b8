/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_EXPERTS_H_
#define POLYBRANCH_EXPERTS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polybranch/branching.h"
#include "polybranch/rules.h"

namespace polybranch {

// Fixed fallback for the dynamic experts when the ORule^S winner is not used.
inline constexpr RuleId kDefaultFixedFallback = RuleId::kRangeRel;

// Probes every candidate and returns one entry per successful probe, in
// candidate order. Failed probes are left out.
std::vector<CandidateKpi> StrongBranchScan(NodeContext& context,
                                           std::span<const int> candidates);

// Best-KPI variable. Returns `fallback` when the best relative KPI
// (kpi / max(1, |parent_lb|)) is at most `tau`; among KPIs tied within
// kKpiTieTolerance of the best, prefers `fallback`, then the lowest index.
// `table` must be nonempty.
int BVarSelect(std::span<const CandidateKpi> table, double tau, double parent_lb,
               int fallback);

struct BRuleOutcome {
  RuleId rule;
  int variable = -1;
  double kpi = 0.0;
  std::vector<RuleChoice> choices;     // every rule's variable
  std::vector<CandidateKpi> probed;    // one entry per distinct variable
};

// Probes the distinct variables chosen by the six rules and returns the rule
// whose variable has the largest KPI. Ties within kKpiTieTolerance go to
// `fallback`, then to the first rule in canonical order. Rules whose probe
// failed drop out; if all fail, the fallback's choice is returned.
BRuleOutcome BRuleSelect(NodeContext& context, const RuleScorer& scorer, RuleId fallback);

enum class SelectionMetric { kPace, kTime, kGap, kNodes };

const char* ToString(SelectionMetric metric);
std::optional<SelectionMetric> ParseSelectionMetric(std::string_view text);

// Summary of one rule's run on one instance.
struct RuleOutcome {
  RuleId rule;
  bool solved = false;
  double pace = 0.0;
  double time = 0.0;
  std::optional<double> gap;
  double nodes = 0.0;
};

// Lowest `metric`; ties go to solved over unsolved, then lower time, then
// lower gap (missing gaps last), then canonical rule order. Throws
// std::invalid_argument on empty input.
RuleId ORuleSelect(std::span<const RuleOutcome> outcomes,
                   SelectionMetric metric = SelectionMetric::kPace);

// Per-node best-KPI variable over all branchable variables. `label` names the
// policy in traces (for example bvar_d_opt).
PolicyFactory MakeBVarPolicy(RuleId fallback, double tau, std::string label);

// Per-node best-KPI rule among the six.
PolicyFactory MakeBRulePolicy(RuleId fallback, std::string label);

}  // namespace polybranch

#endif  // POLYBRANCH_EXPERTS_H_
