/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/rules.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polybranch {

std::string_view RuleLabel(RuleId rule) {
  switch (rule) {
    case RuleId::kDual:
      return "dual";
    case RuleId::kRange:
      return "range";
    case RuleId::kEigen:
      return "eigen";
    case RuleId::kDualRel:
      return "dual_rel";
    case RuleId::kRangeRel:
      return "range_rel";
    case RuleId::kEigenRel:
      return "eigen_rel";
  }
  return "?";
}

std::optional<RuleId> ParseRule(std::string_view label) {
  for (RuleId rule : kAllRules) {
    if (RuleLabel(rule) == label) return rule;
  }
  return std::nullopt;
}

bool IsReliabilityRule(RuleId rule) {
  return rule == RuleId::kDualRel || rule == RuleId::kRangeRel || rule == RuleId::kEigenRel;
}

PseudoStats::PseudoStats(int num_vars, int threshold)
    : count(num_vars, 0), sum(num_vars, 0.0), threshold(threshold) {}

double PseudoStats::Multiplier(int j) const {
  if (count[j] < threshold) return 1.0;
  return std::max(sum[j] / count[j], 1e-3);
}

void ReliabilityUpdate(PseudoStats& stats, int j, double kpi, double parent_lb) {
  stats.count[j] += 1;
  stats.sum[j] += std::min(kpi, 10.0) / std::max(1.0, std::abs(parent_lb));
}

std::vector<double> Eigencentrality(const POProblem& problem) {
  const int n = problem.num_vars;
  std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
  auto add_polynomial = [&](const Polynomial& poly) {
    for (const Monomial& term : poly.terms()) {
      const auto& runs = term.support.runs();
      for (size_t a = 0; a < runs.size(); ++a) {
        for (size_t b = a + 1; b < runs.size(); ++b) {
          weight[runs[a].index][runs[b].index] += 1.0;
          weight[runs[b].index][runs[a].index] += 1.0;
        }
      }
    }
  };
  add_polynomial(problem.objective);
  for (const Constraint& c : problem.inequalities) add_polynomial(c.lhs);
  for (const Constraint& c : problem.equalities) add_polynomial(c.lhs);

  std::vector<bool> isolated(n, true);
  bool any_edge = false;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (weight[i][k] > 0.0) {
        isolated[i] = false;
        any_edge = true;
      }
    }
  }
  if (!any_edge) return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));

  // Power iteration on A + I.
  std::vector<double> v(n), next(n);
  for (int i = 0; i < n; ++i) v[i] = isolated[i] ? 0.0 : 1.0;
  auto normalize = [](std::vector<double>& x) {
    double norm = 0.0;
    for (double e : x) norm += e * e;
    norm = std::sqrt(norm);
    for (double& e : x) e /= norm;
  };
  normalize(v);
  for (int iter = 0; iter < 100000; ++iter) {
    for (int i = 0; i < n; ++i) {
      double s = v[i];
      for (int k = 0; k < n; ++k) s += weight[i][k] * v[k];
      next[i] = s;
    }
    normalize(next);
    double change = 0.0;
    for (int i = 0; i < n; ++i) change = std::max(change, std::abs(next[i] - v[i]));
    v.swap(next);
    if (change < 1e-14) break;
  }
  return v;
}

std::vector<double> RuleScore(RuleId rule, const BBNode& node, const RltIndex& index,
                              const PseudoStats& stats,
                              std::span<const double> centrality) {
  const int n = index.num_vars();
  std::vector<double> scores(n, 0.0);
  if (!node.primal) return scores;
  const std::vector<double>& primal = *node.primal;
  const NodeBounds& b = node.bounds;

  for (const Multiset& monomial : index.problem_monomials()) {
    const int col = index.ColumnOrThrow(monomial);
    for (const Multiset::Run& run : monomial.runs()) {
      const int j = run.index;
      const Multiset rest = monomial.WithoutOne(j);
      double w = 0.0;
      switch (rule) {
        case RuleId::kDual:
        case RuleId::kDualRel:
          w = col < static_cast<int>(node.column_dual_weight.size())
                  ? node.column_dual_weight[col]
                  : 0.0;
          break;
        case RuleId::kRange:
        case RuleId::kRangeRel: {
          const double root_width = b.root_upper[j] - b.root_lower[j];
          if (root_width > 0.0) {
            const double x = primal[j];
            w = std::max(0.0, std::min(b.upper[j] - x, x - b.lower[j])) / root_width;
          }
          break;
        }
        case RuleId::kEigen:
        case RuleId::kEigenRel:
          w = centrality[j];
          break;
      }
      if (w == 0.0) continue;
      scores[j] += w * RltViolation(j, rest, primal, index);
    }
  }
  if (IsReliabilityRule(rule)) {
    for (int j = 0; j < n; ++j) scores[j] *= stats.Multiplier(j);
  }
  for (double& s : scores) {
    if (!std::isfinite(s) || s < 0.0) s = 0.0;
  }
  return scores;
}

int SelectVariable(std::span<const double> scores) {
  int best = -1;
  for (int j = 0; j < static_cast<int>(scores.size()); ++j) {
    if (scores[j] > 0.0 && (best < 0 || scores[j] > scores[best])) best = j;
  }
  if (best < 0) throw std::invalid_argument("no positive score");
  return best;
}

RuleScorer::RuleScorer(const POProblem& problem)
    : centrality_(Eigencentrality(problem)), stats_(problem.num_vars) {}

int RuleScorer::Choose(RuleId rule, const NodeContext& context) const {
  const std::vector<double> scores =
      RuleScore(rule, context.node(), context.index(), stats_, centrality_);
  std::vector<double> masked(scores.size(), 0.0);
  for (int j : context.BranchableVariables()) masked[j] = scores[j];
  if (std::none_of(masked.begin(), masked.end(), [](double s) { return s > 0.0; })) {
    return context.FallbackVariable();
  }
  return SelectVariable(masked);
}

void RuleScorer::Observe(int variable, double kpi, double parent_lb) {
  ReliabilityUpdate(stats_, variable, kpi, parent_lb);
}

namespace {

class RulePolicy final : public BranchingPolicy {
 public:
  RulePolicy(RuleId rule, const POProblem& problem) : rule_(rule), scorer_(problem) {}

  std::string label() const override { return std::string(RuleLabel(rule_)); }

  BranchDecision Decide(NodeContext& context) override {
    BranchDecision decision;
    decision.variable = scorer_.Choose(rule_, context);
    decision.rule_label = label();
    return decision;
  }

  void OnBranch(int variable, double kpi, double parent_lb) override {
    scorer_.Observe(variable, kpi, parent_lb);
  }

 private:
  RuleId rule_;
  RuleScorer scorer_;
};

}  // namespace

PolicyFactory MakeRulePolicy(RuleId rule) {
  return [rule](const POProblem& problem) -> std::unique_ptr<BranchingPolicy> {
    return std::make_unique<RulePolicy>(rule, problem);
  };
}

}  // namespace polybranch
