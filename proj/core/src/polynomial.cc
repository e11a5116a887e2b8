/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/polynomial.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polybranch {

double Monomial::Evaluate(std::span<const double> x) const {
  double value = coefficient;
  for (const auto& run : support.runs()) {
    if (run.index >= static_cast<int>(x.size())) {
      throw std::invalid_argument("dimension mismatch: variable index " +
                                  std::to_string(run.index) +
                                  " with point of size " +
                                  std::to_string(x.size()));
    }
    for (int m = 0; m < run.multiplicity; ++m) value *= x[run.index];
  }
  return value;
}

Polynomial::Polynomial(std::vector<Monomial> terms) {
  for (const Monomial& t : terms) {
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("non-finite polynomial coefficient");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Monomial& a, const Monomial& b) {
                     return a.support < b.support;
                   });
  for (Monomial& t : terms) {
    if (!terms_.empty() && terms_.back().support == t.support) {
      terms_.back().coefficient += t.coefficient;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Monomial& t) { return t.coefficient == 0.0; });
}

Polynomial Polynomial::Constant(double value) {
  return Polynomial({Monomial{value, Multiset()}});
}

Polynomial Polynomial::Variable(int index, double coefficient) {
  return Polynomial({Monomial{coefficient, Multiset::Single(index)}});
}

int Polynomial::degree() const {
  int d = 0;
  for (const Monomial& t : terms_) d = std::max(d, t.support.degree());
  return d;
}

int Polynomial::MaxVariableIndex() const {
  int m = -1;
  for (const Monomial& t : terms_) m = std::max(m, t.support.MaxIndex());
  return m;
}

double Polynomial::ConstantTerm() const {
  if (!terms_.empty() && terms_.front().support.empty()) {
    return terms_.front().coefficient;
  }
  return 0.0;
}

double Polynomial::Evaluate(std::span<const double> x) const {
  double sum = 0.0;
  for (const Monomial& t : terms_) sum += t.Evaluate(x);
  return sum;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Monomial> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return Polynomial(std::move(terms));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Monomial> terms;
  terms.reserve(terms_.size() * other.terms_.size());
  for (const Monomial& a : terms_) {
    for (const Monomial& b : other.terms_) {
      terms.push_back({a.coefficient * b.coefficient, Union(a.support, b.support)});
    }
  }
  return Polynomial(std::move(terms));
}

Polynomial Polynomial::operator*(double scale) const {
  std::vector<Monomial> terms = terms_;
  for (Monomial& t : terms) t.coefficient *= scale;
  return Polynomial(std::move(terms));
}

}  // namespace polybranch
