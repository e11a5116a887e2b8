/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/engine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <stdexcept>

#include "polybranch/lp.h"

namespace polybranch {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kGapLimit:
      return "gap-limit";
    case SolveStatus::kTimeLimit:
      return "time-limit";
    case SolveStatus::kNodeLimit:
      return "node-limit";
    case SolveStatus::kFailed:
      return "failed";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "?";
}

void EngineConfig::Validate() const {
  if (!(rel_gap_tol > 0.0) || !(abs_gap_tol > 0.0) || !(feasibility_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (!(branch_guard >= 0.0 && branch_guard < 0.5)) {
    throw std::invalid_argument("branch guard must lie in [0, 0.5)");
  }
  if (!(time_limit > 0.0)) throw std::invalid_argument("time limit must be positive");
  if (node_limit && *node_limit < 1) throw std::invalid_argument("node limit must be >= 1");
  if (!policy) throw std::invalid_argument("no branching policy configured");
}

GapValues Gap(double lb, double ub) {
  if (ub == kInfinity) return {kInfinity, kInfinity};
  const double abs = ub - lb;
  return {abs, abs / std::max(std::abs(ub), 1e-6)};
}

bool GapClosed(double lb, double ub, double rel_tol, double abs_tol) {
  const GapValues g = Gap(lb, ub);
  return g.abs <= abs_tol || g.rel <= rel_tol;
}

std::pair<NodeBounds, NodeBounds> Branch(const NodeBounds& bounds, int j, double point) {
  if (j < 0 || j >= bounds.size()) throw std::invalid_argument("branch variable out of range");
  if (!(bounds.lower[j] < point && point < bounds.upper[j])) {
    throw std::invalid_argument("branch point must lie strictly inside the node interval");
  }
  NodeBounds left = bounds;
  NodeBounds right = bounds;
  left.upper[j] = point;
  right.lower[j] = point;
  return {std::move(left), std::move(right)};
}

double BranchPoint(const BBNode& node, int j, double guard) {
  const double l = node.bounds.lower[j];
  const double u = node.bounds.upper[j];
  const double mid = 0.5 * (l + u);
  if (!node.primal || j >= static_cast<int>(node.primal->size())) return mid;
  const double value = (*node.primal)[j];
  if (!std::isfinite(value)) return mid;
  const double lo = l + guard * (u - l);
  const double hi = u - guard * (u - l);
  if (lo > hi) return mid;
  return std::clamp(value, lo, hi);
}

double NodeKpi(double parent_lb, double left_lb, double right_lb) {
  return std::min(left_lb, right_lb) - parent_lb;
}

bool UpdateIncumbent(IncumbentState& state, const POProblem& problem,
                     std::span<const double> x, double tol) {
  if (!PointFeasible(problem, x, tol)) return false;
  const double value = problem.objective.Evaluate(x);
  if (!(value < state.best_ub)) return false;
  state.best_ub = value;
  state.incumbent.emplace(x.begin(), x.end());
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point from, Clock::time_point to) {
  return std::chrono::duration<double>(to - from).count();
}

std::vector<double> ColumnDualWeights(const LpModel& model, const LpSolution& solution) {
  std::vector<double> weights(model.num_cols, 0.0);
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const double y = std::abs(solution.duals[i]);
    if (y == 0.0) continue;
    for (const SparseEntry& e : model.rows[i].coefficients) {
      if (e.value != 0.0) weights[e.index] += y;
    }
  }
  return weights;
}

// The child's lb is floored at the parent's.
ChildRelaxation SolveRelaxation(const POProblem& problem, const RltIndex& index,
                                NodeBounds bounds, double parent_lb) {
  const LpModel model = BuildRltLp(problem, bounds, index);
  const LpSolution solution = SolveLp(model);
  ChildRelaxation child;
  child.bounds = std::move(bounds);
  switch (solution.status) {
    case LpStatus::kOptimal:
      child.feasible = true;
      child.lb = std::max(solution.objective_value, parent_lb);
      child.column_dual_weight = ColumnDualWeights(model, solution);
      child.primal = solution.primal;
      break;
    case LpStatus::kInfeasible:
      child.feasible = false;
      child.lb = kInfinity;
      break;
    case LpStatus::kUnbounded:
      throw LpNumericalError("unbounded RLT relaxation");
  }
  return child;
}

class EngineNodeContext final : public NodeContext {
 public:
  EngineNodeContext(const POProblem& problem, const RltIndex& index,
                    const BBNode& node, double guard)
      : problem_(problem), index_(index), node_(node), guard_(guard) {
    for (int j : index.nonlinear_variables()) {
      if (node.bounds.Width(j) > kMinBranchWidth) branchable_.push_back(j);
    }
  }

  const POProblem& problem() const override { return problem_; }
  const RltIndex& index() const override { return index_; }
  const BBNode& node() const override { return node_; }
  const std::vector<int>& BranchableVariables() const override { return branchable_; }

  int FallbackVariable() const override {
    int best = -1;
    double best_ratio = -1.0;
    for (int j : branchable_) {
      const double root_width = node_.bounds.root_upper[j] - node_.bounds.root_lower[j];
      const double ratio = root_width > 0.0 ? node_.bounds.Width(j) / root_width : 0.0;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = j;
      }
    }
    return best;
  }

  const ProbeResult& Probe(int variable) override {
    auto it = probes_.find(variable);
    if (it != probes_.end()) return it->second;
    const auto start = Clock::now();
    ProbeResult probe;
    probe.variable = variable;
    probe.point = BranchPoint(node_, variable, guard_);
    auto [left, right] = Branch(node_.bounds, variable, probe.point);
    try {
      probe.left = SolveRelaxation(problem_, index_, std::move(left), node_.lb);
      probe.right = SolveRelaxation(problem_, index_, std::move(right), node_.lb);
      probe.kpi = NodeKpi(node_.lb, probe.left.lb, probe.right.lb);
    } catch (const LpNumericalError&) {
      probe.failed = true;
    }
    probe.seconds = Seconds(start, Clock::now());
    return probes_.emplace(variable, std::move(probe)).first->second;
  }

  const std::map<int, ProbeResult>& probes() const { return probes_; }

 private:
  const POProblem& problem_;
  const RltIndex& index_;
  const BBNode& node_;
  const double guard_;
  std::vector<int> branchable_;
  std::map<int, ProbeResult> probes_;
};

struct OpenOrder {
  bool operator()(const BBNode& a, const BBNode& b) const {
    if (a.lb != b.lb) return a.lb > b.lb;
    return a.id > b.id;
  }
};

}  // namespace

SolveResult Solve(const POProblem& problem, const EngineConfig& config) {
  config.Validate();
  if (ValidationReport report = Validate(problem); !report.ok()) {
    throw std::invalid_argument("invalid problem: " + report.ToString());
  }
  std::unique_ptr<BranchingPolicy> policy = config.policy(problem);
  if (!policy) throw std::invalid_argument("policy factory returned null");

  SolveResult result;
  result.policy_label = policy->label();
  const RltIndex index = RltIndex::Build(problem);
  const auto start = Clock::now();
  double excluded_seconds = 0.0;
  auto charged = [&] {
    return Seconds(start, Clock::now()) - (config.charge_probe_time ? 0.0 : excluded_seconds);
  };

  IncumbentState incumbent;
  auto try_incumbent = [&](const ChildRelaxation& child) {
    std::vector<double> x(child.primal.begin(), child.primal.begin() + problem.num_vars);
    for (int j = 0; j < problem.num_vars; ++j) {
      x[j] = std::clamp(x[j], child.bounds.lower[j], child.bounds.upper[j]);
    }
    UpdateIncumbent(incumbent, problem, x, config.feasibility_tol);
  };

  std::priority_queue<BBNode, std::vector<BBNode>, OpenOrder> open;
  double fathomed_lb = kInfinity;
  auto global_lb = [&] {
    double lb = open.empty() ? incumbent.best_ub : open.top().lb;
    lb = std::min(lb, fathomed_lb);
    return std::min(lb, incumbent.best_ub);
  };
  auto record_trace = [&] {
    const double lb = global_lb();
    if (result.lb_trace.empty() || lb > result.lb_trace.back().lb) {
      result.lb_trace.push_back({charged(), result.nodes_explored, lb});
    }
  };

  try {
    ChildRelaxation root =
        SolveRelaxation(problem, index, NodeBounds::Root(problem), -kInfinity);
    result.nodes_explored = 1;
    if (!root.feasible) {
      result.status = SolveStatus::kInfeasible;
      result.best_lb = kInfinity;
      result.lb_trace.push_back({charged(), 1, kInfinity});
      result.wall_time = charged();
      result.elapsed_time = Seconds(start, Clock::now());
      return result;
    }
    try_incumbent(root);
    open.push(BBNode{0, std::nullopt, std::move(root.bounds), root.lb, 0,
                     std::move(root.primal), std::move(root.column_dual_weight)});
    int next_id = 1;

    while (true) {
      record_trace();
      const double lb = global_lb();
      if (open.empty()) {
        if (incumbent.best_ub == kInfinity) {
          if (fathomed_lb == kInfinity) {
            result.status = SolveStatus::kInfeasible;
          } else {
            result.status = SolveStatus::kFailed;
            result.failure = "collapsed node without a feasible point";
          }
        } else {
          result.status = GapClosed(lb, incumbent.best_ub, kOptimalityThreshold,
                                    kOptimalityThreshold)
                              ? SolveStatus::kOptimal
                              : SolveStatus::kGapLimit;
        }
        break;
      }
      if (GapClosed(lb, incumbent.best_ub, config.rel_gap_tol, config.abs_gap_tol)) {
        result.status = GapClosed(lb, incumbent.best_ub, kOptimalityThreshold,
                                  kOptimalityThreshold)
                            ? SolveStatus::kOptimal
                            : SolveStatus::kGapLimit;
        break;
      }
      if (config.node_limit && result.nodes_explored >= *config.node_limit) {
        result.status = SolveStatus::kNodeLimit;
        break;
      }
      if (charged() >= config.time_limit) {
        result.status = SolveStatus::kTimeLimit;
        break;
      }

      const BBNode node = open.top();
      open.pop();
      EngineNodeContext context(problem, index, node, config.branch_guard);
      if (context.BranchableVariables().empty()) {
        fathomed_lb = std::min(fathomed_lb, node.lb);
        continue;
      }

      BranchDecision decision = policy->Decide(context);
      const auto& branchable = context.BranchableVariables();
      if (!std::binary_search(branchable.begin(), branchable.end(), decision.variable)) {
        throw std::logic_error("policy chose a non-branchable variable");
      }

      ChildRelaxation left, right;
      double point = 0.0;
      const auto& probes = context.probes();
      auto adopted = probes.find(decision.variable);
      if (adopted != probes.end() && !adopted->second.failed) {
        point = adopted->second.point;
        left = adopted->second.left;
        right = adopted->second.right;
      } else {
        point = BranchPoint(node, decision.variable, config.branch_guard);
        auto [left_bounds, right_bounds] = Branch(node.bounds, decision.variable, point);
        left = SolveRelaxation(problem, index, std::move(left_bounds), node.lb);
        right = SolveRelaxation(problem, index, std::move(right_bounds), node.lb);
      }
      for (const auto& [var, probe] : probes) {
        if (adopted != probes.end() && var == adopted->first && !probe.failed) continue;
        result.probe_lp_solves += 2;
        excluded_seconds += probe.seconds;
      }
      result.nodes_explored += 2;

      NodeDecision entry;
      entry.node_id = node.id;
      entry.parent_id = node.parent_id;
      entry.depth = node.depth;
      entry.policy_label = result.policy_label;
      entry.rule_label = std::move(decision.rule_label);
      entry.variable = decision.variable;
      entry.point = point;
      entry.parent_lb = node.lb;
      entry.left_lb = left.lb;
      entry.right_lb = right.lb;
      entry.kpi = NodeKpi(node.lb, left.lb, right.lb);
      entry.candidates = std::move(decision.candidates);
      entry.rule_choices = std::move(decision.rule_choices);
      entry.wall_time = charged();
      policy->OnBranch(entry.variable, entry.kpi, node.lb);
      result.node_log.push_back(std::move(entry));

      for (ChildRelaxation* child : {&left, &right}) {
        const int id = next_id++;
        if (!child->feasible) continue;
        try_incumbent(*child);
        open.push(BBNode{id, node.id, std::move(child->bounds), child->lb,
                         node.depth + 1, std::move(child->primal),
                         std::move(child->column_dual_weight)});
      }
    }
  } catch (const LpNumericalError& e) {
    result.status = SolveStatus::kFailed;
    result.failure = e.what();
  }

  result.best_ub = incumbent.best_ub;
  result.incumbent = incumbent.incumbent;
  if (result.status != SolveStatus::kInfeasible) result.best_lb = global_lb();
  if (!result.lb_trace.empty() && result.best_lb > result.lb_trace.back().lb) {
    result.lb_trace.push_back({charged(), result.nodes_explored, result.best_lb});
  }
  result.wall_time = charged();
  result.elapsed_time = Seconds(start, Clock::now());
  return result;
}

}  // namespace polybranch
