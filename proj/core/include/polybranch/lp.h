/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_LP_H_
#define POLYBRANCH_LP_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "polybranch/multiset.h"

namespace polybranch {

enum class Relation { kGreaterEqual, kLessEqual, kEqual };

enum class RowKind { kOriginalInequality, kOriginalEquality, kBoundFactor };

// Provenance of an LP row: original constraint `source`, or the bound-factor
// product over (lower_factors, upper_factors).
struct RowTag {
  RowKind kind = RowKind::kOriginalInequality;
  int source = -1;
  Multiset lower_factors;
  Multiset upper_factors;

  static RowTag Inequality(int r) { return {RowKind::kOriginalInequality, r, {}, {}}; }
  static RowTag Equality(int r) { return {RowKind::kOriginalEquality, r, {}, {}}; }
  static RowTag BoundFactor(Multiset lower, Multiset upper) {
    return {RowKind::kBoundFactor, -1, std::move(lower), std::move(upper)};
  }
  bool Consistent() const;
};

struct SparseEntry {
  int index = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

struct LpRow {
  std::vector<SparseEntry> coefficients;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
  RowTag tag;

  double Activity(const std::vector<double>& x) const;
};

// minimize objective . x + objective_offset
// s.t.     rows[i].coefficients . x  (>= | <= | ==)  rows[i].rhs
//          col_lower <= x <= col_upper   (all finite)
struct LpModel {
  int num_cols = 0;
  std::vector<SparseEntry> objective;
  double objective_offset = 0.0;
  std::vector<LpRow> rows;
  std::vector<double> col_lower;
  std::vector<double> col_upper;

  // Invariant violations; empty when the model is well formed.
  std::vector<std::string> Validate() const;
  // One line per row, for diffing. Not a stable format.
  std::string DebugString() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* ToString(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> primal;
  double objective_value = 0.0;
  // Shadow prices, one per row. Under minimization >= rows carry duals >= 0
  // and <= rows duals <= 0.
  std::vector<double> duals;
  int iterations = 0;
};

struct LpOptions {
  int iteration_limit = 50000;
  // Consecutive degenerate pivots before switching from Dantzig to Bland
  // pricing. Bland stays active until a pivot makes progress.
  int degenerate_pivots_before_bland = 50;
  // Pivots without objective progress (relative 1e-9) before the solve is
  // restarted with a larger bound perturbation.
  int stall_pivots = 1000;
};

// Raised when the simplex cannot reach a certified basis: iteration cap,
// singular basis, or a malformed model.
class LpNumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bounded-variable primal revised simplex (two phases). Deterministic: the
// same model always yields the same solution.
LpSolution SolveLp(const LpModel& model, const LpOptions& options = {});

struct CertificateReport {
  double max_bound_violation = 0.0;
  double max_row_violation = 0.0;
  double max_dual_sign_violation = 0.0;
  double max_complementarity = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Verifies an optimal solution: primal feasibility, dual sign feasibility,
// row and bound complementary slackness, and strong duality, all at `tol`.
CertificateReport CheckCertificates(const LpModel& model,
                                    const LpSolution& solution,
                                    double tol = 1e-8);

}  // namespace polybranch

#endif  // POLYBRANCH_LP_H_
