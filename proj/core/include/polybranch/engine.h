/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_ENGINE_H_
#define POLYBRANCH_ENGINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polybranch/branching.h"
#include "polybranch/problem.h"
#include "polybranch/rlt.h"

namespace polybranch {

// Certification threshold for the "optimal" status, for both gap criteria.
inline constexpr double kOptimalityThreshold = 1e-3;

enum class SolveStatus {
  kOptimal,     // gap closed to kOptimalityThreshold
  kGapLimit,    // stopped by a looser configured gap tolerance
  kTimeLimit,
  kNodeLimit,
  kFailed,      // LP numerical failure
  kInfeasible,  // relaxation proves the problem infeasible
};

const char* ToString(SolveStatus status);

struct EngineConfig {
  double time_limit = 600.0;  // seconds; +inf disables
  std::optional<int64_t> node_limit;
  double rel_gap_tol = 1e-3;
  double abs_gap_tol = 1e-3;
  double feasibility_tol = kDefaultFeasibilityTolerance;
  double branch_guard = 0.1;
  PolicyFactory policy;
  // When false, time spent in candidate probes the tree did not adopt is
  // left out of the charged time (experts are modeled as knowing the KPIs
  // for free).
  bool charge_probe_time = false;

  // Throws std::invalid_argument when tolerances or the guard are invalid.
  void Validate() const;
};

struct LbTracePoint {
  double time = 0.0;   // charged seconds
  int64_t nodes = 0;   // nodes explored at that moment
  double lb = 0.0;
};

struct NodeDecision {
  int node_id = 0;
  std::optional<int> parent_id;
  int depth = 0;
  std::string policy_label;
  std::string rule_label;
  int variable = -1;
  double point = 0.0;
  double parent_lb = 0.0;
  double left_lb = kInfinity;
  double right_lb = kInfinity;
  double kpi = 0.0;
  std::vector<CandidateKpi> candidates;
  std::vector<RuleChoice> rule_choices;
  double wall_time = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kFailed;
  std::string policy_label;
  double best_lb = -kInfinity;
  double best_ub = kInfinity;
  std::optional<std::vector<double>> incumbent;
  int64_t nodes_explored = 0;
  int64_t probe_lp_solves = 0;
  double wall_time = 0.0;     // charged seconds
  double elapsed_time = 0.0;  // real seconds, probes included
  std::vector<LbTracePoint> lb_trace;
  std::vector<NodeDecision> node_log;
  std::string failure;
};

struct GapValues {
  double abs = 0.0;
  double rel = 0.0;
};

// abs = ub - lb, rel = (ub - lb) / max(|ub|, 1e-6); both +inf without an
// upper bound.
GapValues Gap(double lb, double ub);
bool GapClosed(double lb, double ub, double rel_tol, double abs_tol);

// Splits variable j at `point`: left gets upper_j = point, right gets
// lower_j = point. Throws std::invalid_argument unless lower_j < point < upper_j.
std::pair<NodeBounds, NodeBounds> Branch(const NodeBounds& bounds, int j, double point);

// Relaxation value of x_j clamped into [l + guard*w, u - guard*w]; the
// midpoint when that interval is empty or no primal is available.
double BranchPoint(const BBNode& node, int j, double guard);

// min(left, right) - parent; infeasible children count as +inf.
double NodeKpi(double parent_lb, double left_lb, double right_lb);

struct IncumbentState {
  double best_ub = kInfinity;
  std::optional<std::vector<double>> incumbent;
};

// Replaces the incumbent if `x` (original variables only) is feasible at
// `tol` and strictly improves the objective. Returns whether it did.
bool UpdateIncumbent(IncumbentState& state, const POProblem& problem,
                     std::span<const double> x, double tol);

// Spatial branch-and-bound over RLT relaxations with best-bound node
// selection (ties by node id). Throws std::invalid_argument for an invalid
// problem or config; LP failures produce status kFailed.
SolveResult Solve(const POProblem& problem, const EngineConfig& config);

}  // namespace polybranch

#endif  // POLYBRANCH_ENGINE_H_
