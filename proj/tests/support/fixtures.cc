/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "support/fixtures.h"

#include <array>

namespace polybranch::testing {

namespace {

Polynomial Bilinear(int i, int k, double c) {
  return Polynomial({{c, Multiset::FromIndices({i, k})}});
}

Polynomial SumOf(int n) {
  std::vector<Monomial> terms;
  for (int j = 0; j < n; ++j) terms.push_back({1.0, Multiset::Single(j)});
  return Polynomial(std::move(terms));
}

POProblem UnitBox(int n, std::string name) {
  POProblem p;
  p.num_vars = n;
  p.lower.assign(n, 0.0);
  p.upper.assign(n, 1.0);
  p.name = std::move(name);
  return p;
}

}  // namespace

POProblem MakeP1() {
  POProblem p = UnitBox(2, "P1");
  p.objective = Bilinear(0, 1, 1.0);
  p.inequalities.push_back({SumOf(2), 1.0});
  return p;
}

POProblem MakeP2() {
  POProblem p = UnitBox(2, "P2");
  p.objective = Bilinear(0, 1, -1.0);
  p.inequalities.push_back({SumOf(2) * -1.0, -1.0});
  return p;
}

POProblem MakeStar() {
  POProblem p = UnitBox(4, "star");
  p.objective = Bilinear(0, 1, 1.0) + Bilinear(0, 2, 1.0) + Bilinear(0, 3, 1.0);
  return p;
}

LpModel MakeRandomLp(std::mt19937_64& rng, const RandomLpOptions& options) {
  auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };
  const int c = options.coefficient_range;

  LpModel m;
  m.num_cols = uniform_int(1, options.max_cols);
  std::vector<int> point(m.num_cols);
  for (int j = 0; j < m.num_cols; ++j) {
    const int lo = uniform_int(-c, c - 1);
    const int hi = uniform_int(lo, std::min(c, lo + c));
    m.col_lower.push_back(lo);
    m.col_upper.push_back(hi);
    point[j] = uniform_int(lo, hi);
    const int obj = uniform_int(-c, c);
    if (obj != 0) m.objective.push_back({j, static_cast<double>(obj)});
  }
  const bool free_rhs = chance(options.free_rhs_probability);
  const int rows = uniform_int(0, options.max_rows);
  for (int r = 0; r < rows; ++r) {
    LpRow row;
    int activity = 0;
    for (int j = 0; j < m.num_cols; ++j) {
      const int a = uniform_int(-c, c);
      if (a == 0) continue;
      row.coefficients.push_back({j, static_cast<double>(a)});
      activity += a * point[j];
    }
    if (row.coefficients.empty()) continue;
    const bool equality = chance(options.equality_probability);
    const bool greater = chance(0.5);
    row.relation = equality  ? Relation::kEqual
                   : greater ? Relation::kGreaterEqual
                             : Relation::kLessEqual;
    if (free_rhs) {
      row.rhs = uniform_int(-c, c);
    } else if (equality) {
      row.rhs = activity;
    } else {
      const int slack = uniform_int(0, 3);
      row.rhs = greater ? activity - slack : activity + slack;
    }
    row.tag = equality ? RowTag::Equality(r) : RowTag::Inequality(r);
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<GeneratorParams> SmallInstanceParams(int count, uint64_t seed) {
  constexpr std::array<double, 3> kDensities = {0.3, 0.5, 0.8};
  std::vector<GeneratorParams> out;
  for (int k = 0; k < count; ++k) {
    GeneratorParams p;
    p.num_vars = 2 + k % 4;
    p.degree = 2 + (k / 4) % 2;
    p.density = kDensities[(k / 8) % 3];
    p.seed = seed + static_cast<uint64_t>(k);
    out.push_back(p);
  }
  return out;
}

}  // namespace polybranch::testing
