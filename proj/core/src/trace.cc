/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/trace.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"

namespace polybranch {

namespace {

using nlohmann::json;

json Number(double value) {
  if (value == kInfinity) return "inf";
  if (value == -kInfinity) return "-inf";
  if (std::isnan(value)) return "nan";
  return value;
}

double ToNumber(const json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string& s = value.get_ref<const std::string&>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
  }
  throw TraceError("expected a number, got " + value.dump());
}

SolveStatus ParseStatus(const std::string& text) {
  for (SolveStatus s : {SolveStatus::kOptimal, SolveStatus::kGapLimit, SolveStatus::kTimeLimit,
                        SolveStatus::kNodeLimit, SolveStatus::kFailed, SolveStatus::kInfeasible}) {
    if (text == ToString(s)) return s;
  }
  throw TraceError("unknown status '" + text + "'");
}

}  // namespace

void WriteTrace(const SolveResult& result, std::ostream& out) {
  json head = {{"type", "result"},
               {"policy", result.policy_label},
               {"status", ToString(result.status)},
               {"best_lb", Number(result.best_lb)},
               {"best_ub", Number(result.best_ub)},
               {"nodes", result.nodes_explored},
               {"probe_lp_solves", result.probe_lp_solves},
               {"wall_time", result.wall_time},
               {"elapsed_time", result.elapsed_time}};
  if (!result.failure.empty()) head["failure"] = result.failure;
  out << head.dump() << '\n';

  for (const NodeDecision& d : result.node_log) {
    json candidates = json::array();
    for (const CandidateKpi& c : d.candidates) {
      candidates.push_back({{"variable", c.variable},
                            {"point", c.point},
                            {"left_lb", Number(c.left_lb)},
                            {"right_lb", Number(c.right_lb)},
                            {"kpi", Number(c.kpi)}});
    }
    json choices = json::array();
    for (const RuleChoice& r : d.rule_choices) {
      choices.push_back({{"rule", RuleLabel(r.rule)}, {"variable", r.variable}});
    }
    json record = {{"type", "node"},
                   {"id", d.node_id},
                   {"parent", d.parent_id ? json(*d.parent_id) : json(nullptr)},
                   {"depth", d.depth},
                   {"policy", d.policy_label},
                   {"rule", d.rule_label},
                   {"variable", d.variable},
                   {"point", d.point},
                   {"parent_lb", Number(d.parent_lb)},
                   {"child_lbs", {Number(d.left_lb), Number(d.right_lb)}},
                   {"kpi", Number(d.kpi)},
                   {"wall_time", d.wall_time},
                   {"candidates", std::move(candidates)},
                   {"rule_choices", std::move(choices)}};
    out << record.dump() << '\n';
  }
  for (const LbTracePoint& p : result.lb_trace) {
    out << json{{"type", "lb"}, {"time", p.time}, {"nodes", p.nodes}, {"lb", Number(p.lb)}}
               .dump()
        << '\n';
  }
}

SolveResult ReadTrace(std::istream& in) {
  SolveResult result;
  std::string line;
  int line_no = 0;
  bool have_head = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json record = json::parse(line);
      const std::string type = record.at("type").get<std::string>();
      if (type == "result") {
        result.policy_label = record.at("policy").get<std::string>();
        result.status = ParseStatus(record.at("status").get<std::string>());
        result.best_lb = ToNumber(record.at("best_lb"));
        result.best_ub = ToNumber(record.at("best_ub"));
        result.nodes_explored = record.at("nodes").get<int64_t>();
        result.probe_lp_solves = record.at("probe_lp_solves").get<int64_t>();
        result.wall_time = record.at("wall_time").get<double>();
        result.elapsed_time = record.at("elapsed_time").get<double>();
        result.failure = record.value("failure", "");
        have_head = true;
      } else if (type == "node") {
        NodeDecision d;
        d.node_id = record.at("id").get<int>();
        if (!record.at("parent").is_null()) d.parent_id = record.at("parent").get<int>();
        d.depth = record.at("depth").get<int>();
        d.policy_label = record.at("policy").get<std::string>();
        d.rule_label = record.at("rule").get<std::string>();
        d.variable = record.at("variable").get<int>();
        d.point = record.at("point").get<double>();
        d.parent_lb = ToNumber(record.at("parent_lb"));
        d.left_lb = ToNumber(record.at("child_lbs").at(0));
        d.right_lb = ToNumber(record.at("child_lbs").at(1));
        d.kpi = ToNumber(record.at("kpi"));
        d.wall_time = record.at("wall_time").get<double>();
        for (const json& c : record.at("candidates")) {
          d.candidates.push_back({c.at("variable").get<int>(), c.at("point").get<double>(),
                                  ToNumber(c.at("left_lb")), ToNumber(c.at("right_lb")),
                                  ToNumber(c.at("kpi"))});
        }
        for (const json& r : record.at("rule_choices")) {
          const auto rule = ParseRule(r.at("rule").get<std::string>());
          if (!rule) throw TraceError("unknown rule " + r.at("rule").dump());
          d.rule_choices.push_back({*rule, r.at("variable").get<int>()});
        }
        result.node_log.push_back(std::move(d));
      } else if (type == "lb") {
        result.lb_trace.push_back({record.at("time").get<double>(),
                                   record.at("nodes").get<int64_t>(),
                                   ToNumber(record.at("lb"))});
      } else {
        throw TraceError("unknown record type '" + type + "'");
      }
    } catch (const TraceError& e) {
      throw TraceError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
      throw TraceError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_head) throw TraceError("missing result record");
  return result;
}

}  // namespace polybranch
