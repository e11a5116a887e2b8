/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance run: one PASS/FAIL line per criterion, details on the
// following indented lines. Usage: polybranch_acceptance [path/to/polybranch]
// The optional CLI path enables the command-line determinism check; without
// it the same check runs through the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polybranch/bench.h"
#include "polybranch/engine.h"
#include "polybranch/generator.h"
#include "polybranch/instance_io.h"
#include "polybranch/lp.h"
#include "polybranch/metrics.h"
#include "polybranch/rlt.h"
#include "polybranch/rules.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/synthetic_reports.h"

namespace pb = polybranch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void Fail(const std::string& why) {
    pass = false;
    if (notes.size() < 40) notes.push_back(why);
  }
  void Note(const std::string& text) { notes.push_back(text); }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

void CheckRuntime(Outcome& out, double seconds, double limit) {
  out.Note("runtime " + Fmt(seconds, 3) + " s (limit " + Fmt(limit) + " s)");
  if (seconds >= limit) out.Fail("runtime over the limit");
}

std::vector<pb::GeneratorParams> SuiteParams() {
  std::vector<pb::GeneratorParams> params;
  for (const auto& [n, d, p] : {std::tuple{8, 3, 0.3}, {9, 3, 0.3}, {7, 4, 0.25}}) {
    for (uint64_t seed = 1; seed <= 10; ++seed) params.push_back({n, d, p, seed});
  }
  return params;
}

std::vector<pb::POProblem> Suite() {
  std::vector<pb::POProblem> out;
  for (const pb::GeneratorParams& p : SuiteParams()) out.push_back(pb::GenerateInstance(p));
  return out;
}

Outcome LpOracle() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(20260101);
  int optimal = 0, infeasible = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const pb::LpModel m = pb::testing::MakeRandomLp(rng);
    pb::LpSolution s;
    try {
      s = pb::SolveLp(m);
    } catch (const pb::LpNumericalError& e) {
      out.Fail("trial " + std::to_string(trial) + ": " + e.what());
      continue;
    }
    const auto oracle = pb::testing::SolveByVertexEnumeration(m);
    if (!oracle) {
      ++infeasible;
      if (s.status != pb::LpStatus::kInfeasible) {
        out.Fail("trial " + std::to_string(trial) + ": oracle infeasible, solver " +
                 pb::ToString(s.status));
      }
      continue;
    }
    ++optimal;
    if (s.status != pb::LpStatus::kOptimal) {
      out.Fail("trial " + std::to_string(trial) + ": solver " + pb::ToString(s.status));
      continue;
    }
    const double err = std::abs(s.objective_value - oracle->value);
    worst = std::max(worst, err);
    if (err > 1e-7) out.Fail("trial " + std::to_string(trial) + ": error " + Fmt(err));
    const pb::CertificateReport cert = pb::CheckCertificates(m, s);
    if (!cert.ok()) out.Fail("trial " + std::to_string(trial) + ": " + cert.failures.front());
  }
  out.Note(std::to_string(optimal) + " optimal, " + std::to_string(infeasible) +
           " infeasible, max |error| " + Fmt(worst, 3));
  CheckRuntime(out, Seconds(start), 10.0);
  return out;
}

Outcome RltValidity() {
  Outcome out;
  const auto start = Clock::now();
  double min_slack = pb::kInfinity;
  for (const pb::GeneratorParams& params : pb::testing::SmallInstanceParams(50, 7000)) {
    const pb::POProblem p = pb::GenerateInstance(params);
    const pb::RltRelaxation r = pb::BuildRltLp(p, pb::NodeBounds::Root(p));
    const pb::LpSolution s = pb::SolveLp(r.model);
    const auto grid = pb::testing::SolveByGrid(p, 11);
    if (!grid) {
      out.Fail(p.name + ": no feasible grid point");
      continue;
    }
    if (s.status != pb::LpStatus::kOptimal) {
      out.Fail(p.name + ": root relaxation " + pb::ToString(s.status));
      continue;
    }
    min_slack = std::min(min_slack, grid->value - s.objective_value);
    if (s.objective_value > grid->value + 1e-6) {
      out.Fail(p.name + ": root " + Fmt(s.objective_value, 12) + " above grid " +
               Fmt(grid->value, 12));
    }
  }
  out.Note("50 instances, min (grid - root) " + Fmt(min_slack, 3));
  CheckRuntime(out, Seconds(start), 120.0);
  return out;
}

Outcome Convergence() {
  Outcome out;
  const auto start = Clock::now();
  {
    pb::EngineConfig cfg;
    cfg.policy = pb::MakeRulePolicy(pb::RuleId::kDual);
    const pb::SolveResult r = pb::Solve(pb::testing::MakeP1(), cfg);
    out.Note("P1: " + std::string(pb::ToString(r.status)) + ", ub " + Fmt(r.best_ub, 12) +
             ", nodes " + std::to_string(r.nodes_explored));
    if (r.status != pb::SolveStatus::kOptimal || r.nodes_explored != 1 ||
        std::abs(r.best_ub) > 1e-9) {
      out.Fail("P1 not solved at the root with optimum 0");
    }
  }
  double lo = pb::kInfinity, hi = -pb::kInfinity;
  for (pb::RuleId rule : pb::kAllRules) {
    pb::EngineConfig cfg;
    cfg.policy = pb::MakeRulePolicy(rule);
    const pb::SolveResult r = pb::Solve(pb::testing::MakeP2(), cfg);
    const std::string label(pb::RuleLabel(rule));
    out.Note("P2 " + label + ": " + pb::ToString(r.status) + ", ub " + Fmt(r.best_ub, 10) +
             ", lb " + Fmt(r.best_lb, 10) + ", nodes " + std::to_string(r.nodes_explored));
    if (r.status != pb::SolveStatus::kOptimal || std::abs(r.best_ub + 0.25) > 1e-3) {
      out.Fail("P2 " + label + " did not reach -0.25");
    }
    lo = std::min(lo, r.best_ub);
    hi = std::max(hi, r.best_ub);
  }
  if (hi - lo > 2e-3) out.Fail("P2 objectives spread " + Fmt(hi - lo));
  CheckRuntime(out, Seconds(start), 5.0);
  return out;
}

const pb::CandidateKpi* FindCandidate(const pb::NodeDecision& d, int variable) {
  for (const pb::CandidateKpi& c : d.candidates) {
    if (c.variable == variable) return &c;
  }
  return nullptr;
}

Outcome ExpertInvariants() {
  Outcome out;
  const auto start = Clock::now();
  pb::BenchConfig config;
  config.deterministic = true;
  config.node_limit = 51;
  config.keep_results = true;
  const auto approaches = pb::ParseApproachList(
      "dual,range,eigen,dual_rel,range_rel,eigen_rel,orule_s,brule_d_opt,bvar_d_opt@0");
  const pb::BenchOutput bench = pb::RunBenchmark(Suite(), approaches, config);

  std::map<std::string, std::map<std::string, const pb::BenchRun*>> runs;
  for (const pb::BenchRun& r : bench.runs) runs[r.instance][r.approach] = &r;
  std::map<std::string, std::map<std::string, const pb::RunRow*>> rows;
  for (const pb::RunRow& r : bench.rows) rows[r.instance][r.approach] = &r;

  // A shortfall within kKpiTieTolerance is a tie resolved toward the fallback.
  int bvar_nodes = 0, brule_nodes = 0, near_ties = 0;
  double max_shortfall = 0.0;
  auto compare = [&](const std::string& where, const pb::NodeDecision& d, double chosen,
                     double other) {
    if (chosen >= other) return;
    const double shortfall = other - chosen;
    if (other != pb::kInfinity && shortfall <= pb::kKpiTieTolerance) {
      ++near_ties;
      max_shortfall = std::max(max_shortfall, shortfall);
      return;
    }
    out.Fail(where + " node " + std::to_string(d.node_id) + ": KPI " + Fmt(chosen, 17) +
             " below " + Fmt(other, 17));
  };
  for (const auto& [instance, by_approach] : rows) {
    double min_pace = pb::kInfinity;
    for (pb::RuleId rule : pb::kAllRules) {
      min_pace = std::min(min_pace, by_approach.at(std::string(pb::RuleLabel(rule)))->pace);
    }
    if (by_approach.at("orule_s")->pace != min_pace) {
      out.Fail(instance + ": orule_s pace " + Fmt(by_approach.at("orule_s")->pace, 17) +
               " != min " + Fmt(min_pace, 17));
    }

    for (const pb::NodeDecision& d : runs[instance]["bvar_d_opt@0"]->result.node_log) {
      ++bvar_nodes;
      const pb::CandidateKpi* chosen = FindCandidate(d, d.variable);
      if (!chosen) {
        out.Fail(instance + " bvar node " + std::to_string(d.node_id) + ": chosen not probed");
        continue;
      }
      for (const pb::RuleChoice& c : d.rule_choices) {
        const pb::CandidateKpi* other = FindCandidate(d, c.variable);
        if (other) compare(instance + " bvar", d, chosen->kpi, other->kpi);
      }
    }

    const pb::RuleId fallback = bench.orule_winner.at(instance);
    for (const pb::NodeDecision& d : runs[instance]["brule_d_opt"]->result.node_log) {
      ++brule_nodes;
      const pb::CandidateKpi* chosen = FindCandidate(d, d.variable);
      int fallback_var = -1;
      for (const pb::RuleChoice& c : d.rule_choices) {
        if (c.rule == fallback) fallback_var = c.variable;
      }
      const pb::CandidateKpi* base = FindCandidate(d, fallback_var);
      if (!base) continue;  // the fallback's probe failed; nothing to compare
      if (!chosen) {
        out.Fail(instance + " brule node " + std::to_string(d.node_id) + ": chosen not probed");
        continue;
      }
      compare(instance + " brule", d, chosen->kpi, base->kpi);
    }
  }
  out.Note("30 instances, node limit 51: " + std::to_string(bvar_nodes) + " BVar nodes, " +
           std::to_string(brule_nodes) + " BRule nodes checked");
  out.Note(std::to_string(near_ties) + " comparisons resolved as ties, max shortfall " +
           Fmt(max_shortfall, 3));
  out.Note("runtime " + Fmt(Seconds(start), 3) + " s");
  return out;
}

Outcome MetricProtocol() {
  Outcome out;
  const auto reports = pb::testing::SyntheticReports();
  for (const pb::testing::SyntheticReport& r : reports) {
    for (const std::string& issue : pb::testing::CheckAggregate(r)) {
      out.Fail(r.name + ": " + issue);
    }
  }
  const auto profiles = pb::testing::SyntheticProfiles();
  for (const pb::testing::SyntheticProfile& p : profiles) {
    for (const std::string& issue : pb::testing::CheckProfile(p)) {
      out.Fail(p.name + ": " + issue);
    }
  }
  out.Note(std::to_string(reports.size()) + " reports, " + std::to_string(profiles.size()) +
           " profiles");
  return out;
}

Outcome DeskReproduction() {
  Outcome out;
  const auto start = Clock::now();
  pb::BenchConfig config;
  config.time_limit = 60.0;
  // The easy threshold keeps its 1:120 ratio to the time limit.
  pb::AggregateOptions options;
  options.easy_time = config.time_limit / 120.0;
  const auto approaches = pb::ParseApproachList(
      "dual,range,eigen,dual_rel,range_rel,eigen_rel,orule_s,brule_d_opt,bvar_d_opt@0");
  const pb::BenchOutput bench = pb::RunBenchmark(Suite(), approaches, config);
  const pb::MetricTable all = pb::Aggregate(bench.rows, options);
  const double seconds = Seconds(start);

  std::string best_rule;
  double best_pace = pb::kInfinity;
  for (const pb::ApproachMetrics& m : all.rows) {
    if (pb::ParseRule(m.approach) && m.pace.value < best_pace) {
      best_pace = m.pace.value;
      best_rule = m.approach;
    }
  }
  const std::vector<std::string> compared = {best_rule, "orule_s", "brule_d_opt",
                                             "bvar_d_opt@0"};
  std::vector<pb::RunRow> subset;
  for (const pb::RunRow& r : bench.rows) {
    if (std::find(compared.begin(), compared.end(), r.approach) != compared.end()) {
      subset.push_back(r);
    }
  }
  const pb::MetricTable table = pb::Aggregate(subset, options);
  std::ostringstream text;
  pb::PrintMetricTable(table, text);
  std::istringstream lines(text.str());
  for (std::string line; std::getline(lines, line);) out.Note(line);

  auto lowest = [&](auto field) {
    std::string who;
    double best = pb::kInfinity;
    for (const pb::ApproachMetrics& m : table.rows) {
      const pb::MetricValue& v = m.*field;
      if (v.count > 0 && v.value < best) {
        best = v.value;
        who = m.approach;
      }
    }
    return who.empty() ? std::string("(none)") : who;
  };
  const std::string fewest_nodes = lowest(&pb::ApproachMetrics::nodes);
  const std::string best_pace_overall = lowest(&pb::ApproachMetrics::pace);
  out.Note("best fixed rule by pace: " + best_rule);
  out.Note("smallest geo-mean nodes: " + fewest_nodes +
           (fewest_nodes == "bvar_d_opt@0" ? " (as expected)" : " (expected bvar_d_opt@0)"));
  out.Note("best pace geo-mean: " + best_pace_overall +
           (best_pace_overall == "orule_s" ? " (as expected)" : " (expected orule_s)"));
  CheckRuntime(out, seconds, 600.0);
  return out;
}

std::string DeterministicReportViaLibrary(const fs::path& dir) {
  pb::BenchConfig config;
  config.deterministic = true;
  const pb::BenchOutput out = pb::RunBenchmark(
      pb::LoadInstanceDir(dir), pb::ParseApproachList("dual,range_rel,orule_s,bvar_d_opt"),
      config);
  std::ostringstream s;
  pb::WriteReport(out.rows, s);
  return s.str();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism(const std::string& cli) {
  Outcome out;
  const fs::path dir = fs::temp_directory_path() / "polybranch_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir / "suite");
  for (const pb::POProblem& p : Suite()) {
    pb::WriteProblemFile(p, dir / "suite" / (p.name + ".pop"));
  }
  std::string first, second;
  if (!cli.empty()) {
    for (const char* name : {"a.csv", "b.csv"}) {
      const std::string cmd = "\"" + cli + "\" bench --dir \"" + (dir / "suite").string() +
                              "\" --approaches dual,range_rel,orule_s,bvar_d_opt" +
                              " --deterministic --out \"" + (dir / name).string() + "\"" +
                              " > /dev/null";
      if (std::system(cmd.c_str()) != 0) out.Fail("command failed: " + cmd);
    }
    first = ReadFile(dir / "a.csv");
    second = ReadFile(dir / "b.csv");
    out.Note("via " + cli);
  } else {
    first = DeterministicReportViaLibrary(dir / "suite");
    second = DeterministicReportViaLibrary(dir / "suite");
    out.Note("via the library (no CLI path given)");
  }
  const size_t lines = static_cast<size_t>(std::count(first.begin(), first.end(), '\n'));
  out.Note(std::to_string(lines) + " report lines, " + std::to_string(first.size()) + " bytes");
  if (lines != 1 + 30 * 4) out.Fail("unexpected report size");
  if (first != second) out.Fail("reports differ");
  fs::remove_all(dir);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"lp oracle equivalence", LpOracle},
      {"rlt lower-bound validity", RltValidity},
      {"end-to-end convergence", Convergence},
      {"expert construction invariants", ExpertInvariants},
      {"metric protocol fidelity", MetricProtocol},
      {"desk-scale reproduction", DeskReproduction},
      {"deterministic bench reports", [&] { return Determinism(cli); }},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.Fail(std::string("exception: ") + e.what());
    }
    all = all && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << criteria[i].first << '\n';
    for (const std::string& note : out.notes) std::cout << "    " << note << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
