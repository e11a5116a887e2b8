/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_BENCH_H_
#define POLYBRANCH_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polybranch/engine.h"
#include "polybranch/experts.h"
#include "polybranch/report.h"

namespace polybranch {

enum class ApproachKind { kRule, kORuleS, kBRuleOpt, kBRuleFix, kBVarOpt, kBVarFix };

struct Approach {
  ApproachKind kind = ApproachKind::kRule;
  RuleId rule = RuleId::kDual;  // kRule only
  double tau = 0.0;             // BVar only
  std::string label;
};

// Labels: dual, range, eigen, dual_rel, range_rel, eigen_rel, orule_s,
// brule_d_opt, brule_d_fix, bvar_d_opt, bvar_d_fix. BVar labels accept a tie
// threshold suffix, as in bvar_d_opt@0.01.
std::optional<Approach> ParseApproach(std::string_view label);
// Comma-separated list; throws std::invalid_argument naming a bad entry or a
// duplicate.
std::vector<Approach> ParseApproachList(std::string_view list);

inline constexpr int64_t kDefaultDeterministicNodeLimit = 200;

struct BenchConfig {
  double time_limit = 600.0;
  std::optional<int64_t> node_limit;
  // Replaces the time limit by a node limit and reports node counts in
  // place of seconds.
  bool deterministic = false;
  double gap_tol = 1e-3;
  int jobs = 1;
  RuleId fixed_fallback = kDefaultFixedFallback;
  SelectionMetric orule_metric = SelectionMetric::kPace;
  // Keep every SolveResult (with its node log) in the output.
  bool keep_results = false;
  std::optional<std::filesystem::path> trace_dir;
};

struct BenchRun {
  std::string instance;
  std::string approach;
  SolveResult result;
};

struct BenchOutput {
  std::vector<RunRow> rows;  // sorted by (instance, approach)
  std::vector<BenchRun> runs;  // same order; empty unless keep_results
  std::map<std::string, RuleId> orule_winner;  // per instance, when computed
};

// solved = optimal status; gap = min(abs, rel) when an incumbent exists;
// time and pace use node counts in deterministic mode.
RunRow MakeRunRow(const std::string& instance, const std::string& approach,
                  const SolveResult& result, bool deterministic);

RuleOutcome OutcomeOf(RuleId rule, const RunRow& row);

// Runs every approach on every instance. ORule^S and the "opt" experts need
// the six fixed rules first; those runs are made once per instance and
// shared. Instance names must be unique.
BenchOutput RunBenchmark(const std::vector<POProblem>& instances,
                         const std::vector<Approach>& approaches, const BenchConfig& config);

// Every *.pop file in `dir`, sorted by name.
std::vector<POProblem> LoadInstanceDir(const std::filesystem::path& dir);

}  // namespace polybranch

#endif  // POLYBRANCH_BENCH_H_
