/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/rlt.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace polybranch {

NodeBounds NodeBounds::Root(const POProblem& problem) {
  return {problem.lower, problem.upper, problem.lower, problem.upper};
}

bool NodeBounds::Valid() const {
  const size_t n = lower.size();
  if (upper.size() != n || root_lower.size() != n || root_upper.size() != n) {
    return false;
  }
  for (size_t j = 0; j < n; ++j) {
    if (!(root_lower[j] <= lower[j] && lower[j] <= upper[j] &&
          upper[j] <= root_upper[j])) {
      return false;
    }
  }
  return true;
}

std::vector<Multiset> CollectMonomials(const POProblem& problem) {
  std::set<Multiset> found;
  auto scan = [&found](const Polynomial& p) {
    for (const Monomial& t : p.terms()) {
      if (t.support.degree() >= 2) found.insert(t.support);
    }
  };
  scan(problem.objective);
  for (const Constraint& c : problem.inequalities) scan(c.lhs);
  for (const Constraint& c : problem.equalities) scan(c.lhs);
  return {found.begin(), found.end()};
}

RltIndex RltIndex::Build(const POProblem& problem) {
  RltIndex index;
  index.num_vars_ = problem.num_vars;
  index.degree_ = problem.Degree();
  index.problem_monomials_ = CollectMonomials(problem);

  std::set<Multiset> universe;
  std::set<int> nonlinear;
  for (const Multiset& m : index.problem_monomials_) {
    for (const Multiset& sub : m.SubMultisets()) {
      if (sub.degree() >= 2) universe.insert(sub);
    }
    for (const auto& run : m.runs()) nonlinear.insert(run.index);
  }
  index.rlt_monomials_.assign(universe.begin(), universe.end());
  for (size_t i = 0; i < index.rlt_monomials_.size(); ++i) {
    index.column_of_.emplace(index.rlt_monomials_[i],
                             index.num_vars_ + static_cast<int>(i));
  }
  index.nonlinear_variables_.assign(nonlinear.begin(), nonlinear.end());
  return index;
}

std::optional<int> RltIndex::Column(const Multiset& support) const {
  if (support.degree() == 0) return std::nullopt;
  if (support.degree() == 1) {
    const int j = support.runs().front().index;
    if (j >= num_vars_) return std::nullopt;
    return j;
  }
  auto it = column_of_.find(support);
  if (it == column_of_.end()) return std::nullopt;
  return it->second;
}

int RltIndex::ColumnOrThrow(const Multiset& support) const {
  auto col = Column(support);
  if (!col) {
    throw std::out_of_range("no RLT column for monomial " + support.ToString());
  }
  return *col;
}

LinearForm Linearize(const Polynomial& p, const RltIndex& index) {
  LinearForm form;
  for (const Monomial& t : p.terms()) {
    if (t.support.empty()) {
      form.offset += t.coefficient;
    } else {
      form.coefficients.push_back({index.ColumnOrThrow(t.support), t.coefficient});
    }
  }
  std::sort(form.coefficients.begin(), form.coefficients.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return form;
}

LpRow BoundFactorRow(const Multiset& lower_factors,
                     const Multiset& upper_factors, const NodeBounds& bounds,
                     const RltIndex& index) {
  if (lower_factors.degree() + upper_factors.degree() > index.degree()) {
    throw std::invalid_argument("bound factor degree exceeds problem degree");
  }
  Polynomial product = Polynomial::Constant(1.0);
  for (int j : lower_factors.Indices()) {
    product = product * (Polynomial::Variable(j) - Polynomial::Constant(bounds.lower[j]));
  }
  for (int j : upper_factors.Indices()) {
    product = product * (Polynomial::Constant(bounds.upper[j]) - Polynomial::Variable(j));
  }
  LinearForm form = Linearize(product, index);
  LpRow row;
  row.coefficients = std::move(form.coefficients);
  row.relation = Relation::kGreaterEqual;
  row.rhs = -form.offset;
  row.tag = RowTag::BoundFactor(lower_factors, upper_factors);
  return row;
}

LpModel BuildRltLp(const POProblem& problem, const NodeBounds& bounds,
                   const RltIndex& index) {
  LpModel model;
  model.num_cols = index.num_cols();
  model.col_lower.resize(model.num_cols);
  model.col_upper.resize(model.num_cols);
  for (int j = 0; j < index.num_vars(); ++j) {
    model.col_lower[j] = bounds.lower[j];
    model.col_upper[j] = bounds.upper[j];
  }
  // All bounds are nonnegative, so interval products reduce to endpoint
  // products.
  for (const Multiset& m : index.rlt_monomials()) {
    double lo = 1.0, hi = 1.0;
    for (int j : m.Indices()) {
      lo *= bounds.lower[j];
      hi *= bounds.upper[j];
    }
    const int col = index.ColumnOrThrow(m);
    model.col_lower[col] = lo;
    model.col_upper[col] = hi;
  }

  LinearForm objective = Linearize(problem.objective, index);
  model.objective = std::move(objective.coefficients);
  model.objective_offset = objective.offset;

  for (size_t r = 0; r < problem.inequalities.size(); ++r) {
    const Constraint& c = problem.inequalities[r];
    LinearForm form = Linearize(c.lhs, index);
    model.rows.push_back({std::move(form.coefficients), Relation::kGreaterEqual,
                          c.rhs - form.offset, RowTag::Inequality(static_cast<int>(r))});
  }
  for (size_t r = 0; r < problem.equalities.size(); ++r) {
    const Constraint& c = problem.equalities[r];
    LinearForm form = Linearize(c.lhs, index);
    model.rows.push_back({std::move(form.coefficients), Relation::kEqual,
                          c.rhs - form.offset, RowTag::Equality(static_cast<int>(r))});
  }
  for (const Multiset& m : index.rlt_monomials()) {
    for (const auto& [lower_part, upper_part] : m.Splits()) {
      model.rows.push_back(BoundFactorRow(lower_part, upper_part, bounds, index));
    }
  }
  return model;
}

RltRelaxation BuildRltLp(const POProblem& problem, const NodeBounds& bounds) {
  RltIndex index = RltIndex::Build(problem);
  LpModel model = BuildRltLp(problem, bounds, index);
  return {std::move(model), std::move(index)};
}

double LiftedValue(const Multiset& support, std::span<const double> primal,
                   const RltIndex& index) {
  if (support.empty()) return 1.0;
  return primal[index.ColumnOrThrow(support)];
}

double RltViolation(int j, const Multiset& rest, std::span<const double> primal,
                    const RltIndex& index) {
  const Multiset full = Union(rest, Multiset::Single(j));
  return std::abs(LiftedValue(full, primal, index) -
                  primal[j] * LiftedValue(rest, primal, index));
}

}  // namespace polybranch
