/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_TRACE_H_
#define POLYBRANCH_TRACE_H_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "polybranch/engine.h"

namespace polybranch {

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON lines: one "result" record, then one "node" record per branching
// and one "lb" record per lower-bound improvement. Infinite values are
// written as the strings "inf" and "-inf".
void WriteTrace(const SolveResult& result, std::ostream& out);

// Inverse of WriteTrace (incumbent excepted). Throws TraceError with the
// line number on malformed input.
SolveResult ReadTrace(std::istream& in);

}  // namespace polybranch

#endif  // POLYBRANCH_TRACE_H_
