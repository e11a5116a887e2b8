/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/metrics.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

namespace polybranch {

double PaceLb(double time, double root_lb, double final_lb) {
  const double delta = final_lb - root_lb;
  if (!std::isfinite(delta) || delta <= 1e-9) return kPaceCap;
  return std::max(time, 1e-9) / delta;
}

double PaceLb(const SolveResult& result) {
  if (result.lb_trace.empty()) return kPaceCap;
  return PaceLb(result.wall_time, result.lb_trace.front().lb, result.lb_trace.back().lb);
}

double GeoMean(std::span<const double> values, double shift) {
  if (values.empty()) throw std::invalid_argument("geometric mean of an empty set");
  if (shift < 0.0) throw std::invalid_argument("negative shift");
  double sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("geometric mean needs nonnegative values");
    sum += std::log(v + shift);
  }
  return std::exp(sum / static_cast<double>(values.size())) - shift;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MetricValue GeoColumn(const std::vector<double>& values, double shift) {
  if (values.empty()) return {kNaN, 0};
  return {GeoMean(values, shift), static_cast<int>(values.size())};
}

}  // namespace

MetricTable Aggregate(std::span<const RunRow> rows, const AggregateOptions& options) {
  std::map<std::string, std::map<std::string, const RunRow*>> by_instance;
  std::set<std::string> approaches;
  for (const RunRow& r : rows) {
    approaches.insert(r.approach);
    auto& slot = by_instance[r.instance][r.approach];
    if (slot) {
      throw std::invalid_argument("duplicate row for " + r.instance + "/" + r.approach);
    }
    slot = &r;
  }
  for (const auto& [instance, runs] : by_instance) {
    if (runs.size() != approaches.size()) {
      throw std::invalid_argument("inconsistent instance sets: " + instance +
                                  " is missing some approaches");
    }
  }

  MetricTable table;
  table.num_instances = static_cast<int>(by_instance.size());
  table.options = options;
  for (const auto& [instance, runs] : by_instance) {
    bool all_solved = true, none_solved = true, all_easy = true, all_have_gap = true;
    for (const auto& [approach, r] : runs) {
      all_solved = all_solved && r->solved;
      none_solved = none_solved && !r->solved;
      all_easy = all_easy && r->solved && r->time < options.easy_time;
      all_have_gap = all_have_gap && r->gap.has_value();
    }
    if (all_have_gap && !all_solved) table.gap_instances.push_back(instance);
    if (!all_easy && !none_solved) table.time_instances.push_back(instance);
    if (!all_easy) table.pace_instances.push_back(instance);
    if (all_solved) table.nodes_instances.push_back(instance);
  }

  for (const std::string& approach : approaches) {
    ApproachMetrics m;
    m.approach = approach;
    std::vector<double> gaps, times, paces, nodes;
    for (const auto& [instance, runs] : by_instance) {
      if (runs.at(approach)->solved) ++m.solved;
    }
    for (const std::string& i : table.gap_instances) gaps.push_back(*by_instance[i][approach]->gap);
    for (const std::string& i : table.time_instances) {
      times.push_back(std::max(by_instance[i][approach]->time, options.time_floor));
    }
    for (const std::string& i : table.pace_instances) {
      paces.push_back(by_instance[i][approach]->pace);
    }
    for (const std::string& i : table.nodes_instances) {
      nodes.push_back(static_cast<double>(by_instance[i][approach]->nodes));
    }
    m.gap = GeoColumn(gaps, options.gap_shift);
    m.time = GeoColumn(times, 0.0);
    m.pace = GeoColumn(paces, 0.0);
    m.nodes = GeoColumn(nodes, 0.0);
    if (nodes.empty()) {
      m.mean_nodes = {kNaN, 0};
    } else {
      double sum = 0.0;
      for (double n : nodes) sum += n;
      m.mean_nodes = {sum / static_cast<double>(nodes.size()), static_cast<int>(nodes.size())};
    }
    table.rows.push_back(std::move(m));
  }
  return table;
}

void PrintMetricTable(const MetricTable& table, std::ostream& out) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  size_t width = 8;
  for (const ApproachMetrics& m : table.rows) width = std::max(width, m.approach.size());
  auto cell = [&](const MetricValue& v) {
    out << std::setw(12);
    if (v.count == 0) {
      out << "-";
    } else {
      out << std::fixed << std::setprecision(4) << v.value;
    }
  };
  out << std::left << std::setw(static_cast<int>(width)) << "approach" << std::right
      << std::setw(8) << "solved" << std::setw(12) << "gap" << std::setw(12) << "time"
      << std::setw(12) << "pace" << std::setw(12) << "nodes" << std::setw(12) << "mean_nodes"
      << '\n';
  for (const ApproachMetrics& m : table.rows) {
    out << std::left << std::setw(static_cast<int>(width)) << m.approach << std::right
        << std::setw(8) << m.solved;
    cell(m.gap);
    cell(m.time);
    cell(m.pace);
    cell(m.nodes);
    cell(m.mean_nodes);
    out << '\n';
  }
  out << "instances: " << table.num_instances << "  gap: " << table.gap_instances.size()
      << "  time: " << table.time_instances.size() << "  pace: " << table.pace_instances.size()
      << "  nodes: " << table.nodes_instances.size() << '\n';
  out << "gap shift " << table.options.gap_shift << ", time floor " << table.options.time_floor
      << " s, easy below " << table.options.easy_time << '\n';
  out.flags(flags);
  out.precision(precision);
}

const char* ToString(ProfileMetric metric) {
  switch (metric) {
    case ProfileMetric::kTime:
      return "time";
    case ProfileMetric::kGap:
      return "gap";
    case ProfileMetric::kPace:
      return "pace";
  }
  return "?";
}

std::optional<ProfileMetric> ParseProfileMetric(std::string_view text) {
  for (ProfileMetric m : {ProfileMetric::kTime, ProfileMetric::kGap, ProfileMetric::kPace}) {
    if (text == ToString(m)) return m;
  }
  return std::nullopt;
}

std::vector<ProfileCurve> PerformanceProfile(const std::vector<std::string>& approaches,
                                             const std::vector<std::vector<double>>& values) {
  const size_t num_instances = values.size();
  std::vector<std::vector<double>> ratios(approaches.size());
  std::set<double> breakpoints;
  for (const std::vector<double>& row : values) {
    if (row.size() != approaches.size()) throw std::invalid_argument("ragged metric matrix");
    double best = kInfinity;
    for (double v : row) {
      if (!(v > 0.0)) throw std::invalid_argument("profile entries must be positive");
      best = std::min(best, v);
    }
    for (size_t a = 0; a < row.size(); ++a) {
      const double r = best == kInfinity ? kInfinity : row[a] / best;
      ratios[a].push_back(r);
      if (std::isfinite(r)) breakpoints.insert(r);
    }
  }

  std::vector<ProfileCurve> curves;
  for (size_t a = 0; a < approaches.size(); ++a) {
    ProfileCurve curve;
    curve.approach = approaches[a];
    std::vector<double> sorted = ratios[a];
    std::sort(sorted.begin(), sorted.end());
    for (double tau : breakpoints) {
      const auto within = std::upper_bound(sorted.begin(), sorted.end(), tau) - sorted.begin();
      curve.points.push_back(
          {tau, static_cast<double>(within) / static_cast<double>(num_instances)});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<ProfileCurve> PerformanceProfile(std::span<const RunRow> rows, ProfileMetric metric,
                                             const AggregateOptions& options) {
  std::set<std::string> approach_set, instance_set;
  std::map<std::pair<std::string, std::string>, const RunRow*> cell;
  for (const RunRow& r : rows) {
    approach_set.insert(r.approach);
    instance_set.insert(r.instance);
    cell[{r.instance, r.approach}] = &r;
  }
  const std::vector<std::string> approaches(approach_set.begin(), approach_set.end());
  std::vector<std::vector<double>> values;
  for (const std::string& instance : instance_set) {
    std::vector<double> row;
    for (const std::string& approach : approaches) {
      auto it = cell.find({instance, approach});
      if (it == cell.end()) {
        throw std::invalid_argument("inconsistent instance sets: " + instance + "/" + approach);
      }
      const RunRow& r = *it->second;
      switch (metric) {
        case ProfileMetric::kTime:
          row.push_back(r.solved ? std::max(r.time, options.time_floor) : kInfinity);
          break;
        case ProfileMetric::kGap:
          row.push_back(r.gap ? *r.gap + options.gap_shift : kInfinity);
          break;
        case ProfileMetric::kPace:
          row.push_back(r.pace);
          break;
      }
    }
    values.push_back(std::move(row));
  }
  return PerformanceProfile(approaches, values);
}

void WriteProfile(const std::vector<ProfileCurve>& curves, std::ostream& out) {
  out << "approach,tau,rho\n";
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) {
      out << c.approach << ',' << FormatDouble(p.tau) << ',' << FormatDouble(p.rho) << '\n';
    }
  }
}

}  // namespace polybranch
