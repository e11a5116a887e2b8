/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polybranch {

bool RowTag::Consistent() const {
  switch (kind) {
    case RowKind::kOriginalInequality:
    case RowKind::kOriginalEquality:
      return source >= 0 && lower_factors.empty() && upper_factors.empty();
    case RowKind::kBoundFactor:
      return source == -1 && lower_factors.degree() + upper_factors.degree() > 0;
  }
  return false;
}

double LpRow::Activity(const std::vector<double>& x) const {
  double sum = 0.0;
  for (const SparseEntry& e : coefficients) sum += e.value * x[e.index];
  return sum;
}

const char* ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

std::vector<std::string> LpModel::Validate() const {
  std::vector<std::string> issues;
  if (num_cols < 0) issues.push_back("negative column count");
  if (static_cast<int>(col_lower.size()) != num_cols ||
      static_cast<int>(col_upper.size()) != num_cols) {
    issues.push_back("column bound vectors do not match num_cols");
    return issues;
  }
  for (int j = 0; j < num_cols; ++j) {
    if (!std::isfinite(col_lower[j]) || !std::isfinite(col_upper[j])) {
      issues.push_back("non-finite bound on column " + std::to_string(j));
    } else if (col_lower[j] > col_upper[j]) {
      issues.push_back("bound inversion on column " + std::to_string(j));
    }
  }
  auto check_entries = [&](const std::vector<SparseEntry>& entries,
                           const std::string& where) {
    for (const SparseEntry& e : entries) {
      if (e.index < 0 || e.index >= num_cols) {
        issues.push_back("column index out of range in " + where);
      }
      if (!std::isfinite(e.value)) {
        issues.push_back("non-finite coefficient in " + where);
      }
    }
  };
  check_entries(objective, "objective");
  for (size_t i = 0; i < rows.size(); ++i) {
    check_entries(rows[i].coefficients, "row " + std::to_string(i));
    if (!std::isfinite(rows[i].rhs)) {
      issues.push_back("non-finite rhs in row " + std::to_string(i));
    }
  }
  return issues;
}

std::string LpModel::DebugString() const {
  std::ostringstream out;
  out.precision(17);
  out << "cols " << num_cols << "\n";
  out << "min";
  for (const SparseEntry& e : objective) out << " " << e.value << "*c" << e.index;
  out << " + " << objective_offset << "\n";
  for (const LpRow& row : rows) {
    switch (row.tag.kind) {
      case RowKind::kOriginalInequality:
        out << "ineq[" << row.tag.source << "]";
        break;
      case RowKind::kOriginalEquality:
        out << "eq[" << row.tag.source << "]";
        break;
      case RowKind::kBoundFactor:
        out << "bf[" << row.tag.lower_factors.ToString() << ","
            << row.tag.upper_factors.ToString() << "]";
        break;
    }
    out << ":";
    for (const SparseEntry& e : row.coefficients) {
      out << " " << e.value << "*c" << e.index;
    }
    switch (row.relation) {
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << row.rhs << "\n";
  }
  for (int j = 0; j < num_cols; ++j) {
    out << "bound c" << j << " " << col_lower[j] << " " << col_upper[j] << "\n";
  }
  return out.str();
}

CertificateReport CheckCertificates(const LpModel& model,
                                    const LpSolution& solution, double tol) {
  CertificateReport report;
  if (solution.status != LpStatus::kOptimal) {
    report.failures.push_back("solution is not optimal");
    return report;
  }
  const int n = model.num_cols;
  const auto& x = solution.primal;
  const auto& y = solution.duals;
  if (static_cast<int>(x.size()) != n || y.size() != model.rows.size()) {
    report.failures.push_back("dimension mismatch");
    return report;
  }

  for (int j = 0; j < n; ++j) {
    report.max_bound_violation =
        std::max({report.max_bound_violation, model.col_lower[j] - x[j],
                  x[j] - model.col_upper[j]});
  }

  // Reduced costs d = c - A^T y.
  std::vector<double> reduced(n, 0.0);
  for (const SparseEntry& e : model.objective) reduced[e.index] += e.value;
  double dual_objective = model.objective_offset;
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const LpRow& row = model.rows[i];
    const double activity = row.Activity(x);
    const double slack = activity - row.rhs;
    double violation = 0.0;
    double sign_violation = 0.0;
    switch (row.relation) {
      case Relation::kGreaterEqual:
        violation = -slack;
        sign_violation = -y[i];
        break;
      case Relation::kLessEqual:
        violation = slack;
        sign_violation = y[i];
        break;
      case Relation::kEqual:
        violation = std::abs(slack);
        break;
    }
    report.max_row_violation = std::max(report.max_row_violation, violation);
    report.max_dual_sign_violation =
        std::max(report.max_dual_sign_violation, sign_violation);
    report.max_complementarity =
        std::max(report.max_complementarity, std::abs(y[i] * slack));
    dual_objective += y[i] * row.rhs;
    for (const SparseEntry& e : row.coefficients) {
      reduced[e.index] -= y[i] * e.value;
    }
  }
  double primal_objective = model.objective_offset;
  for (const SparseEntry& e : model.objective) primal_objective += e.value * x[e.index];
  for (int j = 0; j < n; ++j) {
    const double d = reduced[j];
    // Bound duals: d > 0 prices the lower bound, d < 0 the upper bound.
    const double at = d > 0.0 ? model.col_lower[j] : model.col_upper[j];
    dual_objective += d * at;
    report.max_complementarity =
        std::max(report.max_complementarity, std::abs(d * (x[j] - at)));
  }
  report.primal_objective = primal_objective;
  report.dual_objective = dual_objective;

  if (report.max_bound_violation > tol) {
    report.failures.push_back("column bound violation " +
                              std::to_string(report.max_bound_violation));
  }
  if (report.max_row_violation > tol) {
    report.failures.push_back("primal infeasibility: row violation " +
                              std::to_string(report.max_row_violation));
  }
  if (report.max_dual_sign_violation > tol) {
    report.failures.push_back("dual sign violation " +
                              std::to_string(report.max_dual_sign_violation));
  }
  if (report.max_complementarity > tol) {
    report.failures.push_back("complementary slackness violation " +
                              std::to_string(report.max_complementarity));
  }
  const double scale = std::max(1.0, std::abs(primal_objective));
  if (std::abs(primal_objective - dual_objective) > tol * scale) {
    report.failures.push_back("primal/dual objective mismatch");
  }
  return report;
}

}  // namespace polybranch
