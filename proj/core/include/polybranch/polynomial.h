/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_POLYNOMIAL_H_
#define POLYBRANCH_POLYNOMIAL_H_

#include <span>
#include <string>
#include <vector>

#include "polybranch/multiset.h"

namespace polybranch {

struct Monomial {
  double coefficient = 0.0;
  Multiset support;

  // coefficient * prod_{j in support} x_j, with multiplicity. Throws
  // std::invalid_argument if an index is outside x.
  double Evaluate(std::span<const double> x) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// A sparse polynomial in canonical form: terms sorted by support, no two
// terms share a support, and no coefficient is zero.
class Polynomial {
 public:
  Polynomial() = default;
  // Merges equal supports and drops zero coefficients. Throws
  // std::invalid_argument on non-finite coefficients.
  explicit Polynomial(std::vector<Monomial> terms);

  static Polynomial Constant(double value);
  static Polynomial Variable(int index, double coefficient = 1.0);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  // Maximum term degree; 0 for constants and the zero polynomial.
  int degree() const;
  // Largest variable index referenced, or -1.
  int MaxVariableIndex() const;
  double ConstantTerm() const;

  double Evaluate(std::span<const double> x) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double scale) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Monomial> terms_;
};

}  // namespace polybranch

#endif  // POLYBRANCH_POLYNOMIAL_H_
