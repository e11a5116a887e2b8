/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/bench.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "polybranch/instance_io.h"
#include "polybranch/metrics.h"
#include "polybranch/rules.h"
#include "polybranch/trace.h"

namespace polybranch {

std::optional<Approach> ParseApproach(std::string_view label) {
  Approach a;
  a.label = std::string(label);
  std::string_view base = label;
  std::optional<double> tau;
  if (const size_t at = label.find('@'); at != std::string_view::npos) {
    base = label.substr(0, at);
    tau = ParseDouble(label.substr(at + 1));
    if (!tau || !(*tau >= 0.0) || *tau == kInfinity) return std::nullopt;
  }
  if (auto rule = ParseRule(base)) {
    a.kind = ApproachKind::kRule;
    a.rule = *rule;
  } else if (base == "orule_s") {
    a.kind = ApproachKind::kORuleS;
  } else if (base == "brule_d_opt") {
    a.kind = ApproachKind::kBRuleOpt;
  } else if (base == "brule_d_fix") {
    a.kind = ApproachKind::kBRuleFix;
  } else if (base == "bvar_d_opt") {
    a.kind = ApproachKind::kBVarOpt;
  } else if (base == "bvar_d_fix") {
    a.kind = ApproachKind::kBVarFix;
  } else {
    return std::nullopt;
  }
  if (tau) {
    if (a.kind != ApproachKind::kBVarOpt && a.kind != ApproachKind::kBVarFix) return std::nullopt;
    a.tau = *tau;
  }
  return a;
}

std::vector<Approach> ParseApproachList(std::string_view list) {
  std::vector<Approach> out;
  std::set<std::string> seen;
  size_t start = 0;
  while (start <= list.size()) {
    size_t end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    const std::string_view item = list.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    auto a = ParseApproach(item);
    if (!a) throw std::invalid_argument("unknown approach '" + std::string(item) + "'");
    if (!seen.insert(a->label).second) {
      throw std::invalid_argument("duplicate approach '" + a->label + "'");
    }
    out.push_back(std::move(*a));
  }
  if (out.empty()) throw std::invalid_argument("no approaches given");
  return out;
}

RunRow MakeRunRow(const std::string& instance, const std::string& approach,
                  const SolveResult& result, bool deterministic) {
  RunRow row;
  row.instance = instance;
  row.approach = approach;
  row.solved = result.status == SolveStatus::kOptimal;
  if (result.best_ub < kInfinity) {
    const GapValues g = Gap(result.best_lb, result.best_ub);
    row.gap = std::max(0.0, std::min(g.abs, g.rel));
  }
  row.nodes = result.nodes_explored;
  row.time = deterministic ? static_cast<double>(result.nodes_explored) : result.wall_time;
  if (result.lb_trace.empty()) {
    row.pace = kPaceCap;
  } else {
    row.pace = PaceLb(row.time, result.lb_trace.front().lb, result.lb_trace.back().lb);
  }
  return row;
}

RuleOutcome OutcomeOf(RuleId rule, const RunRow& row) {
  return {rule, row.solved, row.pace, row.time, row.gap, static_cast<double>(row.nodes)};
}

namespace {

void RunPool(std::vector<std::function<void()>>& tasks, int jobs) {
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        tasks[i]();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::string TraceFileName(const std::string& instance, const std::string& approach) {
  std::string name = instance + "." + approach + ".trace";
  std::replace(name.begin(), name.end(), '@', '_');
  return name;
}

}  // namespace

BenchOutput RunBenchmark(const std::vector<POProblem>& instances,
                         const std::vector<Approach>& approaches, const BenchConfig& config) {
  {
    std::set<std::string> names;
    for (const POProblem& p : instances) {
      if (!names.insert(p.name).second) {
        throw std::invalid_argument("duplicate instance name '" + p.name + "'");
      }
    }
  }
  if (config.jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  EngineConfig base;
  base.rel_gap_tol = config.gap_tol;
  base.abs_gap_tol = config.gap_tol;
  if (config.deterministic) {
    base.time_limit = kInfinity;
    base.node_limit = config.node_limit.value_or(kDefaultDeterministicNodeLimit);
  } else {
    base.time_limit = config.time_limit;
    base.node_limit = config.node_limit;
  }

  std::set<RuleId> rules_needed;
  bool need_all_rules = false;
  for (const Approach& a : approaches) {
    if (a.kind == ApproachKind::kRule) rules_needed.insert(a.rule);
    if (a.kind == ApproachKind::kORuleS || a.kind == ApproachKind::kBRuleOpt ||
        a.kind == ApproachKind::kBVarOpt) {
      need_all_rules = true;
    }
  }
  if (need_all_rules) rules_needed.insert(kAllRules.begin(), kAllRules.end());

  std::map<std::pair<std::string, std::string>, SolveResult> results;
  std::mutex results_mutex;
  auto solve_task = [&](const POProblem& problem, std::string label, PolicyFactory policy) {
    return [&, label = std::move(label), policy = std::move(policy)] {
      EngineConfig cfg = base;
      cfg.policy = policy;
      SolveResult result = Solve(problem, cfg);
      if (config.trace_dir) {
        std::ofstream out(*config.trace_dir / TraceFileName(problem.name, label));
        WriteTrace(result, out);
      }
      std::lock_guard lock(results_mutex);
      results.emplace(std::make_pair(problem.name, label), std::move(result));
    };
  };

  std::vector<std::function<void()>> tasks;
  for (const POProblem& p : instances) {
    for (RuleId rule : rules_needed) {
      tasks.push_back(solve_task(p, std::string(RuleLabel(rule)), MakeRulePolicy(rule)));
    }
  }
  RunPool(tasks, config.jobs);

  BenchOutput output;
  if (need_all_rules) {
    for (const POProblem& p : instances) {
      std::vector<RuleOutcome> outcomes;
      for (RuleId rule : kAllRules) {
        const std::string label(RuleLabel(rule));
        outcomes.push_back(
            OutcomeOf(rule, MakeRunRow(p.name, label, results.at({p.name, label}),
                                       config.deterministic)));
      }
      output.orule_winner[p.name] = ORuleSelect(outcomes, config.orule_metric);
    }
  }

  tasks.clear();
  for (const POProblem& p : instances) {
    for (const Approach& a : approaches) {
      const RuleId opt = need_all_rules ? output.orule_winner.at(p.name) : config.fixed_fallback;
      switch (a.kind) {
        case ApproachKind::kRule:
        case ApproachKind::kORuleS:
          break;
        case ApproachKind::kBRuleOpt:
          tasks.push_back(solve_task(p, a.label, MakeBRulePolicy(opt, a.label)));
          break;
        case ApproachKind::kBRuleFix:
          tasks.push_back(
              solve_task(p, a.label, MakeBRulePolicy(config.fixed_fallback, a.label)));
          break;
        case ApproachKind::kBVarOpt:
          tasks.push_back(solve_task(p, a.label, MakeBVarPolicy(opt, a.tau, a.label)));
          break;
        case ApproachKind::kBVarFix:
          tasks.push_back(
              solve_task(p, a.label, MakeBVarPolicy(config.fixed_fallback, a.tau, a.label)));
          break;
      }
    }
  }
  RunPool(tasks, config.jobs);

  for (const POProblem& p : instances) {
    for (const Approach& a : approaches) {
      std::string source = a.label;
      if (a.kind == ApproachKind::kORuleS) {
        source = std::string(RuleLabel(output.orule_winner.at(p.name)));
      }
      const SolveResult& result = results.at({p.name, source});
      output.rows.push_back(MakeRunRow(p.name, a.label, result, config.deterministic));
      if (config.keep_results) output.runs.push_back({p.name, a.label, result});
    }
  }
  std::vector<size_t> order(output.rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    const RunRow& a = output.rows[x];
    const RunRow& b = output.rows[y];
    return std::tie(a.instance, a.approach) < std::tie(b.instance, b.approach);
  });
  std::vector<RunRow> rows;
  std::vector<BenchRun> runs;
  for (size_t i : order) {
    rows.push_back(std::move(output.rows[i]));
    if (config.keep_results) runs.push_back(std::move(output.runs[i]));
  }
  output.rows = std::move(rows);
  output.runs = std::move(runs);
  return output;
}

std::vector<POProblem> LoadInstanceDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pop") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<POProblem> problems;
  for (const auto& f : files) problems.push_back(ReadProblemFile(f));
  return problems;
}

}  // namespace polybranch
