/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_GENERATOR_H_
#define POLYBRANCH_GENERATOR_H_

#include <cstdint>
#include <string>

#include "polybranch/problem.h"

namespace polybranch {

struct GeneratorParams {
  int num_vars = 3;
  int degree = 2;
  double density = 0.5;
  uint64_t seed = 0;
};

// Random box-constrained polynomial program on [0, 1]^n. Each multiset of
// degree 1..degree enters the objective with probability `density` and a
// coefficient drawn uniformly from {-10..-1, 1..10}; draws repeat until the
// objective is nonempty. The single constraint is sum_j x_j >= n / 4.
// The same parameters always give the same problem. Throws
// std::invalid_argument unless num_vars >= 2, degree >= 2 and
// 0 < density <= 1.
POProblem GenerateInstance(const GeneratorParams& params);

// "n<N>_d<D>_p<density>_s<seed>", used as the default problem name.
std::string InstanceName(const GeneratorParams& params);

}  // namespace polybranch

#endif  // POLYBRANCH_GENERATOR_H_
