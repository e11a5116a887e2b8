/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_PROBLEM_H_
#define POLYBRANCH_PROBLEM_H_

#include <span>
#include <string>
#include <vector>

#include "polybranch/polynomial.h"

namespace polybranch {

inline constexpr double kDefaultFeasibilityTolerance = 1e-6;

// lhs(x) >= rhs for inequalities, lhs(x) == rhs for equalities.
struct Constraint {
  Polynomial lhs;
  double rhs = 0.0;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// A box-constrained polynomial program
//
//   minimize objective(x)
//   s.t.     inequalities[r].lhs(x) >= inequalities[r].rhs
//            equalities[r].lhs(x)   == equalities[r].rhs
//            0 <= lower <= x <= upper < inf
struct POProblem {
  int num_vars = 0;
  Polynomial objective;
  std::vector<Constraint> inequalities;
  std::vector<Constraint> equalities;
  std::vector<double> lower;
  std::vector<double> upper;
  std::string name;

  // Max degree over the objective and all constraints.
  int Degree() const;
  double EvaluateObjective(std::span<const double> x) const;

  // Content equality; `name` is ignored.
  bool SameContent(const POProblem& other) const;
};

struct ValidationReport {
  std::vector<std::string> issues;

  bool ok() const { return issues.empty(); }
  std::string ToString() const;
};

ValidationReport Validate(const POProblem& problem);

// True iff lower <= x <= upper, every inequality holds to within `tol` and
// every equality residual is at most `tol`. Throws std::invalid_argument on
// a dimension mismatch or negative tolerance.
bool PointFeasible(const POProblem& problem, std::span<const double> x,
                   double tol = kDefaultFeasibilityTolerance);

}  // namespace polybranch

#endif  // POLYBRANCH_PROBLEM_H_
