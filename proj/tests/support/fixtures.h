/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_TESTS_SUPPORT_FIXTURES_H_
#define POLYBRANCH_TESTS_SUPPORT_FIXTURES_H_

#include <random>
#include <vector>

#include "polybranch/generator.h"
#include "polybranch/lp.h"
#include "polybranch/problem.h"

namespace polybranch::testing {

// min x1*x2  s.t. x1 + x2 >= 1, x in [0,1]^2. Optimum 0.
POProblem MakeP1();
// min -x1*x2  s.t. x1 + x2 <= 1, x in [0,1]^2. Optimum -0.25 at (0.5, 0.5).
POProblem MakeP2();
// min x1*x2 + x1*x3 + x1*x4 on [0,1]^4.
POProblem MakeStar();

struct RandomLpOptions {
  int max_cols = 6;
  int max_rows = 8;
  int coefficient_range = 5;
  // Probability that the right-hand sides are drawn freely instead of being
  // placed around a random integer point of the box.
  double free_rhs_probability = 0.25;
  double equality_probability = 0.15;
};

// Integer-data bounded LP.
LpModel MakeRandomLp(std::mt19937_64& rng, const RandomLpOptions& options = {});

// The generated instances used by the regression and acceptance suites.
std::vector<GeneratorParams> SmallInstanceParams(int count, uint64_t seed);

}  // namespace polybranch::testing

#endif  // POLYBRANCH_TESTS_SUPPORT_FIXTURES_H_
