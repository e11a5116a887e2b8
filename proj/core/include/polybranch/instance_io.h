/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_INSTANCE_IO_H_
#define POLYBRANCH_INSTANCE_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "polybranch/problem.h"

namespace polybranch {

// Instance file format (.pop), whitespace separated, `#` starts a comment:
//
//   vars 2
//   bounds 0 1 0 1
//   min: 1 x1*x2
//   c1: 1 x1 + 1 x2 >= 1
//
// Terms are `coef x<i>[^p][*x<j>[^p]...]` joined by `+` or `-`; variables
// are 1-based. Constraint operators are >=, <= and =; <= rows are stored
// negated as >=.
class ParseError : public std::runtime_error {
 public:
  // `source` (a file name) prefixes the message when nonempty.
  ParseError(int line, const std::string& message, const std::string& source = {});
  int line() const { return line_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  std::string message_;
};

POProblem ParseProblem(std::string_view text, std::string name = {});
// The problem name is the file stem. Throws ParseError, or
// std::runtime_error if the file cannot be read.
POProblem ReadProblemFile(const std::filesystem::path& path);

// Canonical text: parsing it back yields a problem with identical content.
std::string WriteProblem(const POProblem& problem);
void WriteProblemFile(const POProblem& problem, const std::filesystem::path& path);

}  // namespace polybranch

#endif  // POLYBRANCH_INSTANCE_IO_H_
