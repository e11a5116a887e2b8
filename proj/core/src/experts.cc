/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/experts.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace polybranch {

std::vector<CandidateKpi> StrongBranchScan(NodeContext& context,
                                           std::span<const int> candidates) {
  std::vector<CandidateKpi> table;
  table.reserve(candidates.size());
  for (int j : candidates) {
    const ProbeResult& probe = context.Probe(j);
    if (probe.failed) continue;
    table.push_back({j, probe.point, probe.left.lb, probe.right.lb, probe.kpi});
  }
  return table;
}

int BVarSelect(std::span<const CandidateKpi> table, double tau, double parent_lb,
               int fallback) {
  if (table.empty()) throw std::invalid_argument("empty KPI table");
  double best = -kInfinity;
  for (const CandidateKpi& c : table) best = std::max(best, c.kpi);
  if (best / std::max(1.0, std::abs(parent_lb)) <= tau) return fallback;

  auto tied = [&](const CandidateKpi& c) {
    if (best == kInfinity) return c.kpi == kInfinity;
    return c.kpi >= best - kKpiTieTolerance;
  };
  int choice = -1;
  for (const CandidateKpi& c : table) {
    if (!tied(c)) continue;
    if (c.variable == fallback) return fallback;
    if (choice < 0 || c.variable < choice) choice = c.variable;
  }
  return choice;
}

BRuleOutcome BRuleSelect(NodeContext& context, const RuleScorer& scorer, RuleId fallback) {
  BRuleOutcome outcome;
  outcome.rule = fallback;
  std::map<int, std::optional<double>> kpi_of;
  for (RuleId rule : kAllRules) {
    const int j = scorer.Choose(rule, context);
    outcome.choices.push_back({rule, j});
    if (kpi_of.contains(j)) continue;
    const ProbeResult& probe = context.Probe(j);
    if (probe.failed) {
      kpi_of[j] = std::nullopt;
    } else {
      kpi_of[j] = probe.kpi;
      outcome.probed.push_back({j, probe.point, probe.left.lb, probe.right.lb, probe.kpi});
    }
  }
  int fallback_var = -1;
  for (const RuleChoice& c : outcome.choices) {
    if (c.rule == fallback) fallback_var = c.variable;
  }
  outcome.variable = fallback_var;

  double best = -kInfinity;
  for (const auto& [j, kpi] : kpi_of) {
    if (kpi) best = std::max(best, *kpi);
  }
  if (best == -kInfinity) return outcome;
  outcome.kpi = best;
  auto tied = [&](const std::optional<double>& kpi) {
    if (!kpi) return false;
    if (best == kInfinity) return *kpi == kInfinity;
    return *kpi >= best - kKpiTieTolerance;
  };
  if (tied(kpi_of[fallback_var])) {
    outcome.kpi = *kpi_of[fallback_var];
    return outcome;
  }
  for (const RuleChoice& c : outcome.choices) {
    if (tied(kpi_of[c.variable])) {
      outcome.rule = c.rule;
      outcome.variable = c.variable;
      outcome.kpi = *kpi_of[c.variable];
      break;
    }
  }
  return outcome;
}

const char* ToString(SelectionMetric metric) {
  switch (metric) {
    case SelectionMetric::kPace:
      return "pace";
    case SelectionMetric::kTime:
      return "time";
    case SelectionMetric::kGap:
      return "gap";
    case SelectionMetric::kNodes:
      return "nodes";
  }
  return "?";
}

std::optional<SelectionMetric> ParseSelectionMetric(std::string_view text) {
  for (SelectionMetric m : {SelectionMetric::kPace, SelectionMetric::kTime,
                            SelectionMetric::kGap, SelectionMetric::kNodes}) {
    if (text == ToString(m)) return m;
  }
  return std::nullopt;
}

RuleId ORuleSelect(std::span<const RuleOutcome> outcomes, SelectionMetric metric) {
  if (outcomes.empty()) throw std::invalid_argument("no rule outcomes");
  auto key = [metric](const RuleOutcome& o) {
    const double gap = o.gap.value_or(kInfinity);
    double primary = o.pace;
    switch (metric) {
      case SelectionMetric::kPace:
        primary = o.pace;
        break;
      case SelectionMetric::kTime:
        primary = o.time;
        break;
      case SelectionMetric::kGap:
        primary = gap;
        break;
      case SelectionMetric::kNodes:
        primary = o.nodes;
        break;
    }
    const int order = static_cast<int>(
        std::find(kAllRules.begin(), kAllRules.end(), o.rule) - kAllRules.begin());
    return std::make_tuple(primary, !o.solved, o.time, gap, order);
  };
  const RuleOutcome* best = &outcomes.front();
  for (const RuleOutcome& o : outcomes) {
    if (key(o) < key(*best)) best = &o;
  }
  return best->rule;
}

namespace {

class BVarPolicy final : public BranchingPolicy {
 public:
  BVarPolicy(const POProblem& problem, RuleId fallback, double tau, std::string label)
      : scorer_(problem), fallback_(fallback), tau_(tau), label_(std::move(label)) {}

  std::string label() const override { return label_; }

  BranchDecision Decide(NodeContext& context) override {
    BranchDecision decision;
    int fallback_var = -1;
    for (RuleId rule : kAllRules) {
      const int j = scorer_.Choose(rule, context);
      decision.rule_choices.push_back({rule, j});
      if (rule == fallback_) fallback_var = j;
    }
    decision.candidates = StrongBranchScan(context, context.BranchableVariables());
    if (decision.candidates.empty()) {
      decision.variable = fallback_var;
      decision.rule_label = std::string(RuleLabel(fallback_));
      return decision;
    }
    decision.variable =
        BVarSelect(decision.candidates, tau_, context.node().lb, fallback_var);
    decision.rule_label =
        decision.variable == fallback_var ? std::string(RuleLabel(fallback_)) : label_;
    return decision;
  }

  void OnBranch(int variable, double kpi, double parent_lb) override {
    scorer_.Observe(variable, kpi, parent_lb);
  }

 private:
  RuleScorer scorer_;
  RuleId fallback_;
  double tau_;
  std::string label_;
};

class BRulePolicy final : public BranchingPolicy {
 public:
  BRulePolicy(const POProblem& problem, RuleId fallback, std::string label)
      : scorer_(problem), fallback_(fallback), label_(std::move(label)) {}

  std::string label() const override { return label_; }

  BranchDecision Decide(NodeContext& context) override {
    BRuleOutcome outcome = BRuleSelect(context, scorer_, fallback_);
    BranchDecision decision;
    decision.variable = outcome.variable;
    decision.rule_label = std::string(RuleLabel(outcome.rule));
    decision.candidates = std::move(outcome.probed);
    decision.rule_choices = std::move(outcome.choices);
    return decision;
  }

  void OnBranch(int variable, double kpi, double parent_lb) override {
    scorer_.Observe(variable, kpi, parent_lb);
  }

 private:
  RuleScorer scorer_;
  RuleId fallback_;
  std::string label_;
};

}  // namespace

PolicyFactory MakeBVarPolicy(RuleId fallback, double tau, std::string label) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tie threshold must be >= 0");
  return [=](const POProblem& problem) -> std::unique_ptr<BranchingPolicy> {
    return std::make_unique<BVarPolicy>(problem, fallback, tau, label);
  };
}

PolicyFactory MakeBRulePolicy(RuleId fallback, std::string label) {
  return [=](const POProblem& problem) -> std::unique_ptr<BranchingPolicy> {
    return std::make_unique<BRulePolicy>(problem, fallback, label);
  };
}

}  // namespace polybranch
