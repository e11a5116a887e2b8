/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "polybranch/bench.h"
#include "polybranch/engine.h"
#include "polybranch/experts.h"
#include "polybranch/generator.h"
#include "polybranch/instance_io.h"
#include "polybranch/lp.h"
#include "polybranch/metrics.h"
#include "polybranch/report.h"
#include "polybranch/rules.h"
#include "polybranch/trace.h"

namespace pb = polybranch;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

pb::RuleId RequireRule(const std::string& label) {
  auto rule = pb::ParseRule(label);
  if (!rule) throw InputError("unknown rule '" + label + "'");
  return *rule;
}

std::vector<pb::RunRow> LoadReport(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return pb::ReadReport(in);
}

struct SolveArgs {
  std::string instance;
  std::string rule;
  std::string expert;
  std::string fallback = std::string(pb::RuleLabel(pb::kDefaultFixedFallback));
  double tie_tau = 0.0;
  double time_limit = 600.0;
  std::optional<int64_t> node_limit;
  double gap_tol = 1e-3;
  std::string trace;
};

void PrintResult(const pb::SolveResult& r) {
  std::cout << std::setprecision(10);
  std::cout << "policy      " << r.policy_label << '\n'
            << "status      " << pb::ToString(r.status) << '\n'
            << "best_lb     " << r.best_lb << '\n'
            << "best_ub     " << r.best_ub << '\n'
            << "nodes       " << r.nodes_explored << '\n'
            << "probe_lps   " << r.probe_lp_solves << '\n'
            << "time_s      " << r.wall_time << '\n';
  if (r.incumbent) {
    std::cout << "incumbent  ";
    for (double v : *r.incumbent) std::cout << ' ' << v;
    std::cout << '\n';
  }
  if (!r.failure.empty()) std::cout << "failure     " << r.failure << '\n';
}

int RunSolve(const SolveArgs& args) {
  const pb::POProblem problem = pb::ReadProblemFile(args.instance);
  pb::EngineConfig base;
  base.time_limit = args.time_limit;
  base.node_limit = args.node_limit;
  base.rel_gap_tol = args.gap_tol;
  base.abs_gap_tol = args.gap_tol;

  auto run_rules = [&] {
    std::vector<pb::RuleOutcome> outcomes;
    std::vector<pb::SolveResult> results;
    for (pb::RuleId rule : pb::kAllRules) {
      pb::EngineConfig cfg = base;
      cfg.policy = pb::MakeRulePolicy(rule);
      results.push_back(pb::Solve(problem, cfg));
      outcomes.push_back(pb::OutcomeOf(
          rule, pb::MakeRunRow(problem.name, std::string(pb::RuleLabel(rule)), results.back(),
                               false)));
    }
    const pb::RuleId winner = pb::ORuleSelect(outcomes);
    const auto index = std::find(pb::kAllRules.begin(), pb::kAllRules.end(), winner) -
                       pb::kAllRules.begin();
    return std::make_pair(winner, std::move(results[index]));
  };

  pb::SolveResult result;
  if (!args.rule.empty()) {
    base.policy = pb::MakeRulePolicy(RequireRule(args.rule));
    result = pb::Solve(problem, base);
  } else if (args.expert == "orule_s") {
    auto [winner, best] = run_rules();
    std::cout << "winner      " << pb::RuleLabel(winner) << '\n';
    result = std::move(best);
    result.policy_label = "orule_s";
  } else {
    const bool opt = args.fallback == "opt";
    const pb::RuleId fallback = opt ? run_rules().first : RequireRule(args.fallback);
    const std::string suffix = opt ? "_opt" : "_fix";
    if (args.expert == "bvar_d") {
      base.policy = pb::MakeBVarPolicy(fallback, args.tie_tau, "bvar_d" + suffix);
    } else if (args.expert == "brule_d") {
      base.policy = pb::MakeBRulePolicy(fallback, "brule_d" + suffix);
    } else {
      throw InputError("unknown expert '" + args.expert + "'");
    }
    result = pb::Solve(problem, base);
  }

  PrintResult(result);
  if (!args.trace.empty()) {
    std::ofstream out(args.trace);
    if (!out) throw InputError("cannot write " + args.trace);
    pb::WriteTrace(result, out);
  }
  return result.status == pb::SolveStatus::kFailed ? kExitSolver : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial branch-and-bound for polynomial programs with RLT relaxations"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--instance", solve_args.instance, "Instance file (.pop)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* rule_opt = solve->add_option("--rule", solve_args.rule, "Branching rule");
  auto* expert_opt = solve->add_option("--expert", solve_args.expert,
                                       "Expert policy: orule_s, brule_d or bvar_d");
  rule_opt->excludes(expert_opt);
  solve->add_option("--fallback", solve_args.fallback,
                    "Expert fallback rule, or 'opt' for the ORule^S winner")
      ->capture_default_str();
  solve->add_option("--tie-tau", solve_args.tie_tau, "BVar tie threshold")->check(
      CLI::NonNegativeNumber);
  solve->add_option("--time-limit", solve_args.time_limit, "Seconds")->capture_default_str();
  solve->add_option("--node-limit", solve_args.node_limit, "Maximum tree nodes");
  solve->add_option("--gap-tol", solve_args.gap_tol, "Relative and absolute gap tolerance")
      ->capture_default_str();
  solve->add_option("--trace", solve_args.trace, "Write a JSON-lines trace");

  std::string bench_dir, bench_out, bench_list, bench_fallback, bench_trace_dir;
  pb::BenchConfig bench_config;
  auto* bench = app.add_subcommand("bench", "Run approaches over a directory of instances");
  bench->add_option("--dir", bench_dir, "Instance directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--approaches", bench_list, "Comma-separated approach labels")->required();
  bench->add_option("--out", bench_out, "Report CSV")->required();
  bench->add_option("--jobs", bench_config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--deterministic", bench_config.deterministic,
                  "Node limit instead of time limit; node counts instead of seconds");
  bench->add_option("--time-limit", bench_config.time_limit, "Seconds per solve");
  bench->add_option("--node-limit", bench_config.node_limit, "Maximum tree nodes per solve");
  bench->add_option("--gap-tol", bench_config.gap_tol, "Gap tolerance");
  bench->add_option("--fallback", bench_fallback, "Fixed fallback rule for *_fix experts");
  bench->add_option("--trace-dir", bench_trace_dir, "Write one trace per run here");

  pb::GeneratorParams gen_params;
  int gen_count = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate random instances");
  gen->add_option("--vars", gen_params.num_vars)->required();
  gen->add_option("--degree", gen_params.degree)->required();
  gen->add_option("--density", gen_params.density)->required();
  gen->add_option("--seed", gen_params.seed)->required();
  gen->add_option("--count", gen_count, "Instances, with seeds seed..seed+count-1")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string profile_report, profile_metric, profile_out;
  auto* profile = app.add_subcommand("profile", "Performance profile of a report");
  profile->add_option("--report", profile_report)->required()->check(CLI::ExistingFile);
  profile->add_option("--metric", profile_metric)
      ->required()
      ->check(CLI::IsMember({"time", "gap", "pace"}));
  profile->add_option("--out", profile_out)->required();

  std::string aggregate_report;
  auto* aggregate = app.add_subcommand("aggregate", "Metric table of a report");
  aggregate->add_option("--report", aggregate_report)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*solve) {
      if (solve_args.rule.empty() && solve_args.expert.empty()) {
        throw InputError("one of --rule or --expert is required");
      }
      return RunSolve(solve_args);
    }
    if (*bench) {
      const auto approaches = pb::ParseApproachList(bench_list);
      if (!bench_fallback.empty()) bench_config.fixed_fallback = RequireRule(bench_fallback);
      if (!bench_trace_dir.empty()) {
        std::filesystem::create_directories(bench_trace_dir);
        bench_config.trace_dir = bench_trace_dir;
      }
      const auto instances = pb::LoadInstanceDir(bench_dir);
      if (instances.empty()) throw InputError("no .pop files in " + bench_dir);
      const pb::BenchOutput output = pb::RunBenchmark(instances, approaches, bench_config);
      std::ofstream out(bench_out);
      if (!out) throw InputError("cannot write " + bench_out);
      pb::WriteReport(output.rows, out);
      std::cout << "wrote " << output.rows.size() << " rows to " << bench_out << '\n';
      return 0;
    }
    if (*gen) {
      std::filesystem::create_directories(gen_out);
      for (int k = 0; k < gen_count; ++k) {
        pb::GeneratorParams p = gen_params;
        p.seed = gen_params.seed + static_cast<uint64_t>(k);
        const pb::POProblem problem = pb::GenerateInstance(p);
        const auto path = std::filesystem::path(gen_out) / (problem.name + ".pop");
        pb::WriteProblemFile(problem, path);
        std::cout << path.string() << '\n';
      }
      return 0;
    }
    if (*profile) {
      const auto rows = LoadReport(profile_report);
      const auto curves = pb::PerformanceProfile(rows, *pb::ParseProfileMetric(profile_metric));
      std::ofstream out(profile_out);
      if (!out) throw InputError("cannot write " + profile_out);
      pb::WriteProfile(curves, out);
      return 0;
    }
    if (*aggregate) {
      const auto rows = LoadReport(aggregate_report);
      pb::PrintMetricTable(pb::Aggregate(rows), std::cout);
      return 0;
    }
  } catch (const pb::LpNumericalError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
