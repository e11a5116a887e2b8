/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/instance_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "polybranch/report.h"

namespace polybranch {

ParseError::ParseError(int line, const std::string& message, const std::string& source)
    : std::runtime_error((source.empty() ? "" : source + ": ") +
                         (line > 0 ? "line " + std::to_string(line) + ": " : "") + message),
      line_(line),
      message_(message) {}

namespace {

std::vector<std::string_view> Tokenize(std::string_view line) {
  if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

class LineParser {
 public:
  LineParser(int line, int num_vars) : line_(line), num_vars_(num_vars) {}

  double Number(std::string_view token) const {
    const auto value = ParseDouble(token);
    if (!value || !std::isfinite(*value)) {
      throw ParseError(line_, "expected a finite number, got '" + std::string(token) + "'");
    }
    return *value;
  }

  int Integer(std::string_view token, std::string_view what) const {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(line_, "bad " + std::string(what) + " '" + std::string(token) + "'");
    }
    return value;
  }

  Multiset MonomialSupport(std::string_view token) const {
    std::vector<int> indices;
    size_t start = 0;
    while (start <= token.size()) {
      size_t end = token.find('*', start);
      if (end == std::string_view::npos) end = token.size();
      std::string_view factor = token.substr(start, end - start);
      int power = 1;
      if (const size_t caret = factor.find('^'); caret != std::string_view::npos) {
        power = Integer(factor.substr(caret + 1), "exponent");
        if (power < 1) throw ParseError(line_, "exponent must be >= 1");
        factor = factor.substr(0, caret);
      }
      if (factor.size() < 2 || factor[0] != 'x') {
        throw ParseError(line_, "bad variable '" + std::string(factor) + "'");
      }
      const int index = Integer(factor.substr(1), "variable");
      if (index < 1 || index > num_vars_) {
        throw ParseError(line_, "unknown variable " + std::string(factor));
      }
      for (int p = 0; p < power; ++p) indices.push_back(index - 1);
      start = end + 1;
    }
    return Multiset::FromIndices(indices);
  }

  Polynomial Poly(std::span<const std::string_view> tokens) const {
    std::vector<Monomial> terms;
    size_t i = 0;
    while (i < tokens.size()) {
      double sign = 1.0;
      bool saw_operator = false;
      while (i < tokens.size() && (tokens[i] == "+" || tokens[i] == "-")) {
        if (tokens[i] == "-") sign = -sign;
        saw_operator = true;
        ++i;
      }
      if (!terms.empty() && !saw_operator) {
        throw ParseError(line_, "expected + or - before '" + std::string(tokens[i]) + "'");
      }
      if (i == tokens.size()) throw ParseError(line_, "dangling operator");
      double coefficient = 1.0;
      Multiset support;
      if (tokens[i].front() == 'x') {
        support = MonomialSupport(tokens[i++]);
      } else {
        coefficient = Number(tokens[i++]);
        if (i < tokens.size() && tokens[i].front() == 'x') support = MonomialSupport(tokens[i++]);
      }
      terms.push_back({sign * coefficient, std::move(support)});
    }
    if (terms.empty()) throw ParseError(line_, "empty polynomial");
    return Polynomial(std::move(terms));
  }

 private:
  int line_;
  int num_vars_;
};

std::string TermText(const Monomial& m) {
  std::string out;
  for (const Multiset::Run& run : m.support.runs()) {
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(run.index + 1);
    if (run.multiplicity > 1) out += '^' + std::to_string(run.multiplicity);
  }
  return out;
}

std::string PolyText(const Polynomial& p) {
  if (p.terms().empty()) return "0";
  std::string out;
  for (const Monomial& m : p.terms()) {
    const double c = m.coefficient;
    if (out.empty()) {
      out += FormatDouble(c);
    } else {
      out += c < 0 ? " - " : " + ";
      out += FormatDouble(std::abs(c));
    }
    if (!m.support.empty()) out += ' ' + TermText(m);
  }
  return out;
}

}  // namespace

POProblem ParseProblem(std::string_view text, std::string name) {
  POProblem problem;
  problem.name = std::move(name);
  bool have_vars = false, have_bounds = false, have_objective = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::vector<std::string_view> tokens = Tokenize(line);
    if (tokens.empty()) continue;
    LineParser parser(line_no, problem.num_vars);
    const std::string_view head = tokens.front();

    if (head == "vars") {
      if (have_vars) throw ParseError(line_no, "duplicate vars line");
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'vars N'");
      problem.num_vars = parser.Integer(tokens[1], "variable count");
      if (problem.num_vars < 1) throw ParseError(line_no, "variable count must be >= 1");
      have_vars = true;
      continue;
    }
    if (!have_vars) throw ParseError(line_no, "expected 'vars N' first");

    if (head == "bounds") {
      if (have_bounds) throw ParseError(line_no, "duplicate bounds line");
      const size_t n = static_cast<size_t>(problem.num_vars);
      if (tokens.size() != 1 + 2 * n) {
        throw ParseError(line_no, "expected " + std::to_string(2 * n) + " bound values");
      }
      for (size_t j = 0; j < n; ++j) {
        const double l = parser.Number(tokens[1 + 2 * j]);
        const double u = parser.Number(tokens[2 + 2 * j]);
        if (l > u) {
          throw ParseError(line_no, "bound inversion at variable x" + std::to_string(j + 1));
        }
        problem.lower.push_back(l);
        problem.upper.push_back(u);
      }
      have_bounds = true;
    } else if (head == "min:") {
      if (have_objective) throw ParseError(line_no, "duplicate objective");
      problem.objective = parser.Poly(std::span(tokens).subspan(1));
      have_objective = true;
    } else if (head.size() > 1 && head.back() == ':') {
      size_t op = 0;
      for (size_t k = 1; k < tokens.size(); ++k) {
        if (tokens[k] == ">=" || tokens[k] == "<=" || tokens[k] == "=") {
          op = k;
          break;
        }
      }
      if (op == 0) throw ParseError(line_no, "constraint without >=, <= or =");
      if (op + 2 != tokens.size()) throw ParseError(line_no, "expected a single right-hand side");
      Polynomial lhs = parser.Poly(std::span(tokens).subspan(1, op - 1));
      double rhs = parser.Number(tokens[op + 1]);
      if (tokens[op] == "=") {
        problem.equalities.push_back({std::move(lhs), rhs});
      } else if (tokens[op] == ">=") {
        problem.inequalities.push_back({std::move(lhs), rhs});
      } else {
        problem.inequalities.push_back({lhs * -1.0, -rhs + 0.0});
      }
    } else {
      throw ParseError(line_no, "unrecognized line starting with '" + std::string(head) + "'");
    }
  }
  if (!have_vars) throw ParseError(0, "missing 'vars' line");
  if (!have_bounds) throw ParseError(0, "missing 'bounds' line");
  if (!have_objective) throw ParseError(0, "missing 'min:' objective");
  if (const ValidationReport report = Validate(problem); !report.ok()) {
    throw ParseError(0, "invalid problem: " + report.ToString());
  }
  return problem;
}

POProblem ReadProblemFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseProblem(buffer.str(), path.stem().string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path.string());
  }
}

std::string WriteProblem(const POProblem& problem) {
  std::string out = "vars " + std::to_string(problem.num_vars) + "\nbounds";
  for (int j = 0; j < problem.num_vars; ++j) {
    out += ' ' + FormatDouble(problem.lower[j]) + ' ' + FormatDouble(problem.upper[j]);
  }
  out += "\nmin: " + PolyText(problem.objective) + '\n';
  int k = 0;
  for (const Constraint& c : problem.inequalities) {
    out += 'c' + std::to_string(++k) + ": " + PolyText(c.lhs) + " >= " + FormatDouble(c.rhs) + '\n';
  }
  for (const Constraint& c : problem.equalities) {
    out += 'c' + std::to_string(++k) + ": " + PolyText(c.lhs) + " = " + FormatDouble(c.rhs) + '\n';
  }
  return out;
}

void WriteProblemFile(const POProblem& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << WriteProblem(problem);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace polybranch
