/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/problem.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polybranch {

int POProblem::Degree() const {
  int d = objective.degree();
  for (const Constraint& c : inequalities) d = std::max(d, c.lhs.degree());
  for (const Constraint& c : equalities) d = std::max(d, c.lhs.degree());
  return d;
}

double POProblem::EvaluateObjective(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_vars) {
    throw std::invalid_argument("dimension mismatch");
  }
  return objective.Evaluate(x);
}

bool POProblem::SameContent(const POProblem& other) const {
  return num_vars == other.num_vars && objective == other.objective &&
         inequalities == other.inequalities &&
         equalities == other.equalities && lower == other.lower &&
         upper == other.upper;
}

std::string ValidationReport::ToString() const {
  std::string out;
  for (const std::string& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue;
  }
  return out;
}

namespace {

void CheckPolynomial(const Polynomial& p, int num_vars, const std::string& what,
                     std::vector<std::string>& issues) {
  if (p.MaxVariableIndex() >= num_vars) {
    issues.push_back("index out of range in " + what + ": x" +
                     std::to_string(p.MaxVariableIndex() + 1) + " with " +
                     std::to_string(num_vars) + " variables");
  }
}

}  // namespace

ValidationReport Validate(const POProblem& problem) {
  ValidationReport report;
  auto& issues = report.issues;
  const int n = problem.num_vars;
  if (n < 1) issues.push_back("problem has no variables");
  if (static_cast<int>(problem.lower.size()) != n ||
      static_cast<int>(problem.upper.size()) != n) {
    issues.push_back("bound vectors do not match variable count");
  } else {
    for (int j = 0; j < n; ++j) {
      const double l = problem.lower[j];
      const double u = problem.upper[j];
      const std::string var = "x" + std::to_string(j + 1);
      if (!std::isfinite(l) || !std::isfinite(u)) {
        issues.push_back("non-finite bound at variable " + var);
      } else if (l < 0.0) {
        issues.push_back("negative lower bound at variable " + var);
      } else if (l > u) {
        issues.push_back("bound inversion at variable " + var);
      }
    }
  }
  CheckPolynomial(problem.objective, n, "objective", issues);
  for (size_t r = 0; r < problem.inequalities.size(); ++r) {
    CheckPolynomial(problem.inequalities[r].lhs, n,
                    "inequality " + std::to_string(r + 1), issues);
    if (!std::isfinite(problem.inequalities[r].rhs)) {
      issues.push_back("non-finite rhs in inequality " + std::to_string(r + 1));
    }
  }
  for (size_t r = 0; r < problem.equalities.size(); ++r) {
    CheckPolynomial(problem.equalities[r].lhs, n,
                    "equality " + std::to_string(r + 1), issues);
    if (!std::isfinite(problem.equalities[r].rhs)) {
      issues.push_back("non-finite rhs in equality " + std::to_string(r + 1));
    }
  }
  if (problem.Degree() < 1) issues.push_back("problem degree is 0");
  return report;
}

bool PointFeasible(const POProblem& problem, std::span<const double> x,
                   double tol) {
  if (static_cast<int>(x.size()) != problem.num_vars) {
    throw std::invalid_argument("dimension mismatch");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("negative tolerance");
  for (int j = 0; j < problem.num_vars; ++j) {
    if (!(x[j] >= problem.lower[j] && x[j] <= problem.upper[j])) return false;
  }
  for (const Constraint& c : problem.inequalities) {
    if (!(c.lhs.Evaluate(x) >= c.rhs - tol)) return false;
  }
  for (const Constraint& c : problem.equalities) {
    if (!(std::abs(c.lhs.Evaluate(x) - c.rhs) <= tol)) return false;
  }
  return true;
}

}  // namespace polybranch
