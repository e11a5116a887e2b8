/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_RULES_H_
#define POLYBRANCH_RULES_H_

#include <span>
#include <vector>

#include "polybranch/branching.h"
#include "polybranch/problem.h"
#include "polybranch/rlt.h"

namespace polybranch {

inline constexpr int kDefaultReliabilityThreshold = 4;

// Per-variable history of observed relative KPIs.
struct PseudoStats {
  PseudoStats() = default;
  explicit PseudoStats(int num_vars, int threshold = kDefaultReliabilityThreshold);

  std::vector<int> count;
  std::vector<double> sum;
  int threshold = kDefaultReliabilityThreshold;

  // 1 until the variable has `threshold` observations, then the mean
  // relative KPI floored at 1e-3.
  double Multiplier(int j) const;
};

// count_j += 1; sum_j += min(kpi, 10) / max(1, |parent_lb|).
void ReliabilityUpdate(PseudoStats& stats, int j, double kpi, double parent_lb);

// Dominant eigenvector of the variable co-occurrence graph (edge weight =
// number of monomial occurrences containing both endpoints), unit norm and
// entrywise nonnegative. Isolated variables get 0; a graph without edges
// yields the uniform vector.
std::vector<double> Eigencentrality(const POProblem& problem);

// theta_j = sum over problem monomials M containing j of
//           w(j, M - j) * |X_M - x_j X_{M - j}|
// at the node's relaxation point. All zeros when the node has no primal.
std::vector<double> RuleScore(RuleId rule, const BBNode& node, const RltIndex& index,
                              const PseudoStats& stats,
                              std::span<const double> centrality);

// Argmax with lowest-index ties. Throws std::invalid_argument when no
// entry is positive.
int SelectVariable(std::span<const double> scores);

// Owns the per-solve state shared by the rules: centralities and pseudo
// statistics.
class RuleScorer {
 public:
  explicit RuleScorer(const POProblem& problem);

  // The rule's choice among the branchable variables, or the context's
  // fallback variable when every branchable score is zero.
  int Choose(RuleId rule, const NodeContext& context) const;
  void Observe(int variable, double kpi, double parent_lb);

  const PseudoStats& stats() const { return stats_; }
  const std::vector<double>& centrality() const { return centrality_; }

 private:
  std::vector<double> centrality_;
  PseudoStats stats_;
};

// Policy that always follows one rule.
PolicyFactory MakeRulePolicy(RuleId rule);

}  // namespace polybranch

#endif  // POLYBRANCH_RULES_H_
