/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/generator.h"

#include <random>
#include <stdexcept>
#include <vector>

#include "polybranch/report.h"

namespace polybranch {

namespace {

// Multisets of exactly `degree` indices from [0, n), nondecreasing, in
// lexicographic order.
void EnumerateSupports(int n, int degree, std::vector<int>& prefix,
                       std::vector<Multiset>& out) {
  if (static_cast<int>(prefix.size()) == degree) {
    out.push_back(Multiset::FromIndices(prefix));
    return;
  }
  for (int j = prefix.empty() ? 0 : prefix.back(); j < n; ++j) {
    prefix.push_back(j);
    EnumerateSupports(n, degree, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

POProblem GenerateInstance(const GeneratorParams& params) {
  if (params.num_vars < 2) throw std::invalid_argument("generator needs at least 2 variables");
  if (params.degree < 2) throw std::invalid_argument("generator needs degree >= 2");
  if (!(params.density > 0.0 && params.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  const int n = params.num_vars;
  std::vector<Multiset> supports;
  for (int d = 1; d <= params.degree; ++d) {
    std::vector<int> prefix;
    EnumerateSupports(n, d, prefix, supports);
  }

  std::mt19937_64 rng(params.seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto coefficient = [&rng] {
    const int k = static_cast<int>(rng() % 20);
    return static_cast<double>(k < 10 ? k - 10 : k - 9);
  };

  std::vector<Monomial> terms;
  while (terms.empty()) {
    for (const Multiset& s : supports) {
      if (uniform() < params.density) terms.push_back({coefficient(), s});
    }
  }

  POProblem problem;
  problem.num_vars = n;
  problem.objective = Polynomial(std::move(terms));
  std::vector<Monomial> linear;
  for (int j = 0; j < n; ++j) linear.push_back({1.0, Multiset::Single(j)});
  problem.inequalities.push_back({Polynomial(std::move(linear)), n / 4.0});
  problem.lower.assign(n, 0.0);
  problem.upper.assign(n, 1.0);
  problem.name = InstanceName(params);
  return problem;
}

std::string InstanceName(const GeneratorParams& params) {
  return "n" + std::to_string(params.num_vars) + "_d" + std::to_string(params.degree) + "_p" +
         FormatDouble(params.density) + "_s" + std::to_string(params.seed);
}

}  // namespace polybranch
