/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_METRICS_H_
#define POLYBRANCH_METRICS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polybranch/engine.h"
#include "polybranch/report.h"

namespace polybranch {

// Pace for runs whose lower bound never moved.
inline constexpr double kPaceCap = 1e7;

// time / (final_lb - root_lb); kPaceCap when the improvement is at most
// 1e-9 or not finite.
double PaceLb(double time, double root_lb, double final_lb);
// Uses wall_time and the first and last lb_trace entries.
double PaceLb(const SolveResult& result);

// exp(mean(ln(v + shift))) - shift. Throws std::invalid_argument on empty
// input or a negative value.
double GeoMean(std::span<const double> values, double shift = 0.0);

struct AggregateOptions {
  double gap_shift = 0.001;
  double time_floor = 0.01;
  // Instances every approach solves below this time are "easy".
  double easy_time = 5.0;
};

// A metric column entry: NaN value when `count` is 0.
struct MetricValue {
  double value = 0.0;
  int count = 0;
};

struct ApproachMetrics {
  std::string approach;
  int solved = 0;
  MetricValue gap;
  MetricValue time;
  MetricValue pace;
  MetricValue nodes;       // geometric mean
  MetricValue mean_nodes;  // arithmetic mean
};

struct MetricTable {
  int num_instances = 0;
  AggregateOptions options;
  std::vector<ApproachMetrics> rows;  // sorted by approach
  // Instances kept per metric column, sorted.
  std::vector<std::string> gap_instances;
  std::vector<std::string> time_instances;
  std::vector<std::string> pace_instances;
  std::vector<std::string> nodes_instances;
};

// Per-metric exclusions:
//   gap:   drop instances where some approach has no gap or all solved;
//   time:  drop instances all solved below easy_time, or solved by none;
//   pace:  drop instances all solved below easy_time;
//   nodes: keep only instances solved by every approach.
// Throws std::invalid_argument unless every approach has exactly one row
// per instance.
MetricTable Aggregate(std::span<const RunRow> rows, const AggregateOptions& options = {});

// Human-readable table.
void PrintMetricTable(const MetricTable& table, std::ostream& out);

enum class ProfileMetric { kTime, kGap, kPace };
const char* ToString(ProfileMetric metric);
std::optional<ProfileMetric> ParseProfileMetric(std::string_view text);

struct ProfilePoint {
  double tau = 1.0;
  double rho = 0.0;
  friend bool operator==(const ProfilePoint&, const ProfilePoint&) = default;
};

struct ProfileCurve {
  std::string approach;
  std::vector<ProfilePoint> points;
};

// Dolan-More profile of `values[i][a]` (instance i, approach a), all > 0
// with +inf for failures. Curves are evaluated at every finite ratio that
// occurs for any approach, ascending.
std::vector<ProfileCurve> PerformanceProfile(const std::vector<std::string>& approaches,
                                             const std::vector<std::vector<double>>& values);

// Builds the matrix from report rows: time (floored, +inf if unsolved),
// gap (+ gap shift, +inf if missing) or pace.
std::vector<ProfileCurve> PerformanceProfile(std::span<const RunRow> rows, ProfileMetric metric,
                                             const AggregateOptions& options = {});

// `approach,tau,rho` lines with a header.
void WriteProfile(const std::vector<ProfileCurve>& curves, std::ostream& out);

}  // namespace polybranch

#endif  // POLYBRANCH_METRICS_H_
