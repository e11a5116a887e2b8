/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_RLT_H_
#define POLYBRANCH_RLT_H_

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "polybranch/lp.h"
#include "polybranch/multiset.h"
#include "polybranch/polynomial.h"
#include "polybranch/problem.h"

namespace polybranch {

// Current node box [lower, upper] nested in the root box.
struct NodeBounds {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> root_lower;
  std::vector<double> root_upper;

  static NodeBounds Root(const POProblem& problem);
  int size() const { return static_cast<int>(lower.size()); }
  double Width(int j) const { return upper[j] - lower[j]; }
  // Checks root_lower <= lower <= upper <= root_upper.
  bool Valid() const;
};

// Column layout of an RLT relaxation. Columns [0, num_vars) are the original
// variables; each multiset of degree >= 2 in the monomial universe gets one
// further column, in increasing multiset order.
class RltIndex {
 public:
  // The universe is the downward closure (degree >= 2) of every support that
  // occurs in the problem.
  static RltIndex Build(const POProblem& problem);

  int num_vars() const { return num_vars_; }
  int num_cols() const { return num_vars_ + static_cast<int>(rlt_monomials_.size()); }
  int degree() const { return degree_; }

  // Column for a multiset of degree 1 or more; nullopt if absent or empty.
  std::optional<int> Column(const Multiset& support) const;
  // Throws std::out_of_range if absent.
  int ColumnOrThrow(const Multiset& support) const;

  // Degree >= 2 multisets that own a column, in column order.
  const std::vector<Multiset>& rlt_monomials() const { return rlt_monomials_; }
  // Degree >= 2 supports that literally occur in the problem, sorted.
  const std::vector<Multiset>& problem_monomials() const { return problem_monomials_; }
  // Original variables that occur in some problem monomial of degree >= 2.
  const std::vector<int>& nonlinear_variables() const { return nonlinear_variables_; }

  const Multiset& ColumnMonomial(int col) const {
    return rlt_monomials_[col - num_vars_];
  }

 private:
  int num_vars_ = 0;
  int degree_ = 0;
  std::vector<Multiset> rlt_monomials_;
  std::vector<Multiset> problem_monomials_;
  std::vector<int> nonlinear_variables_;
  std::map<Multiset, int> column_of_;
};

// Every support of degree >= 2 occurring in the objective or a constraint,
// deduplicated and sorted.
std::vector<Multiset> CollectMonomials(const POProblem& problem);

struct LinearForm {
  std::vector<SparseEntry> coefficients;  // sorted by column
  double offset = 0.0;
};

// Replaces each monomial by its column. Throws std::out_of_range if a support
// of degree >= 2 has no column.
LinearForm Linearize(const Polynomial& p, const RltIndex& index);

// The row  lin( prod_{j in lower_factors} (x_j - l_j)
//               * prod_{j in upper_factors} (u_j - x_j) ) >= 0
// at the node bounds. Throws std::invalid_argument if the combined degree
// exceeds the problem degree.
LpRow BoundFactorRow(const Multiset& lower_factors,
                     const Multiset& upper_factors, const NodeBounds& bounds,
                     const RltIndex& index);

// The RLT relaxation of `problem` over the node box. Rows: original
// inequalities, original equalities, then bound factors for every split of
// every RLT monomial in column order.
LpModel BuildRltLp(const POProblem& problem, const NodeBounds& bounds,
                   const RltIndex& index);

struct RltRelaxation {
  LpModel model;
  RltIndex index;
};
RltRelaxation BuildRltLp(const POProblem& problem, const NodeBounds& bounds);

// Value of X_S at `primal`: 1 for the empty multiset, x_j for degree 1.
double LiftedValue(const Multiset& support, std::span<const double> primal,
                   const RltIndex& index);

// |X_{rest + j} - x_j * X_rest| at the relaxation point.
double RltViolation(int j, const Multiset& rest, std::span<const double> primal,
                    const RltIndex& index);

}  // namespace polybranch

#endif  // POLYBRANCH_RLT_H_
