/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_BRANCHING_H_
#define POLYBRANCH_BRANCHING_H_

#include <array>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polybranch/problem.h"
#include "polybranch/rlt.h"

namespace polybranch {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Two KPI values closer than this are a tie.
inline constexpr double kKpiTieTolerance = 1e-9;

// Variables narrower than this at a node are never branched on.
inline constexpr double kMinBranchWidth = 1e-8;

enum class RuleId { kDual, kRange, kEigen, kDualRel, kRangeRel, kEigenRel };

inline constexpr std::array<RuleId, 6> kAllRules = {
    RuleId::kDual,    RuleId::kRange,    RuleId::kEigen,
    RuleId::kDualRel, RuleId::kRangeRel, RuleId::kEigenRel};

// Trace labels: dual, range, eigen, dual_rel, range_rel, eigen_rel.
std::string_view RuleLabel(RuleId rule);
std::optional<RuleId> ParseRule(std::string_view label);
bool IsReliabilityRule(RuleId rule);

// One open or processed node of the branch-and-bound tree.
struct BBNode {
  int id = 0;
  std::optional<int> parent_id;
  NodeBounds bounds;
  double lb = kInfinity;  // relaxation bound, +inf if infeasible
  int depth = 0;
  // Full relaxation primal (original and RLT columns).
  std::optional<std::vector<double>> primal;
  // Per LP column, sum of |dual| over the relaxation rows with a nonzero
  // coefficient on that column.
  std::vector<double> column_dual_weight;
};

// A child relaxation solved for a candidate split.
struct ChildRelaxation {
  NodeBounds bounds;
  bool feasible = false;
  double lb = kInfinity;
  std::vector<double> primal;
  std::vector<double> column_dual_weight;
};

struct ProbeResult {
  int variable = -1;
  double point = 0.0;
  ChildRelaxation left;
  ChildRelaxation right;
  double kpi = 0.0;
  bool failed = false;  // an LP hit a numerical failure
  double seconds = 0.0;
};

struct CandidateKpi {
  int variable = -1;
  double point = 0.0;
  double left_lb = kInfinity;
  double right_lb = kInfinity;
  double kpi = 0.0;
};

struct RuleChoice {
  RuleId rule;
  int variable;
};

struct BranchDecision {
  int variable = -1;
  // Rule whose choice was followed, or the expert label when the expert
  // overrode every rule.
  std::string rule_label;
  std::vector<CandidateKpi> candidates;
  std::vector<RuleChoice> rule_choices;
};

// What a branching policy can see and do at one node. Implemented by the
// engine.
class NodeContext {
 public:
  virtual ~NodeContext() = default;

  virtual const POProblem& problem() const = 0;
  virtual const RltIndex& index() const = 0;
  virtual const BBNode& node() const = 0;
  // Variables in some degree >= 2 monomial whose node width exceeds
  // kMinBranchWidth, ascending. Never empty when a policy is consulted.
  virtual const std::vector<int>& BranchableVariables() const = 0;
  // Widest relative domain among branchable variables, lowest index on ties.
  virtual int FallbackVariable() const = 0;
  // Solves both children of the split of `variable` at its branch point.
  // Memoized per node; these LPs do not count as tree nodes unless the
  // engine adopts the pair as the actual children.
  virtual const ProbeResult& Probe(int variable) = 0;
};

class BranchingPolicy {
 public:
  virtual ~BranchingPolicy() = default;

  virtual std::string label() const = 0;
  virtual BranchDecision Decide(NodeContext& context) = 0;
  // Called after the chosen split's children are solved.
  virtual void OnBranch(int /*variable*/, double /*kpi*/, double /*parent_lb*/) {}
};

// Creates a fresh policy per solve; policies may keep per-solve state.
using PolicyFactory = std::function<std::unique_ptr<BranchingPolicy>(const POProblem&)>;

}  // namespace polybranch

#endif  // POLYBRANCH_BRANCHING_H_
