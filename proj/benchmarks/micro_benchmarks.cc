/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <benchmark/benchmark.h>

#include "polybranch/engine.h"
#include "polybranch/generator.h"
#include "polybranch/lp.h"
#include "polybranch/rlt.h"
#include "polybranch/rules.h"

namespace pb = polybranch;

namespace {

pb::POProblem Instance(int n, int degree) {
  return pb::GenerateInstance({n, degree, 0.3, 1});
}

void BM_BuildRootRelaxation(benchmark::State& state) {
  const pb::POProblem p = Instance(static_cast<int>(state.range(0)), 3);
  const pb::NodeBounds root = pb::NodeBounds::Root(p);
  for (auto _ : state) {
    pb::RltRelaxation r = pb::BuildRltLp(p, root);
    benchmark::DoNotOptimize(r.model.rows.data());
  }
  state.counters["rows"] = static_cast<double>(pb::BuildRltLp(p, root).model.rows.size());
}
BENCHMARK(BM_BuildRootRelaxation)->Arg(4)->Arg(6)->Arg(8);

void BM_SolveRootRelaxation(benchmark::State& state) {
  const pb::POProblem p = Instance(static_cast<int>(state.range(0)), 3);
  const pb::RltRelaxation r = pb::BuildRltLp(p, pb::NodeBounds::Root(p));
  for (auto _ : state) {
    pb::LpSolution s = pb::SolveLp(r.model);
    benchmark::DoNotOptimize(s.objective_value);
  }
}
BENCHMARK(BM_SolveRootRelaxation)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Eigencentrality(benchmark::State& state) {
  const pb::POProblem p = Instance(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    std::vector<double> c = pb::Eigencentrality(p);
    benchmark::DoNotOptimize(c.data());
  }
}
BENCHMARK(BM_Eigencentrality)->Arg(8)->Arg(16);

void BM_SolveSmallInstance(benchmark::State& state) {
  const pb::POProblem p = Instance(5, 3);
  pb::EngineConfig cfg;
  cfg.node_limit = 41;
  cfg.policy = pb::MakeRulePolicy(pb::RuleId::kRangeRel);
  for (auto _ : state) {
    pb::SolveResult r = pb::Solve(p, cfg);
    benchmark::DoNotOptimize(r.best_lb);
  }
}
BENCHMARK(BM_SolveSmallInstance)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
