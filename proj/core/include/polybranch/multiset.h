/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef POLYBRANCH_MULTISET_H_
#define POLYBRANCH_MULTISET_H_

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polybranch {

// A multiset of variable indices, kept as run-length encoded (index,
// multiplicity) pairs sorted by strictly increasing index. The empty multiset
// is valid and has degree 0.
//
// Multisets are ordered lexicographically on their runs. That order fixes
// the column layout of RLT relaxations, so it must stay deterministic.
class Multiset {
 public:
  struct Run {
    int index = 0;
    int multiplicity = 0;
    auto operator<=>(const Run&) const = default;
  };

  Multiset() = default;

  // Builds a multiset from indices given in any order, repeats allowed.
  static Multiset FromIndices(std::span<const int> indices);
  static Multiset FromIndices(std::initializer_list<int> indices);
  // Throws std::invalid_argument unless runs are canonical.
  static Multiset FromRuns(std::vector<Run> runs);
  static Multiset Single(int index, int multiplicity = 1);

  const std::vector<Run>& runs() const { return runs_; }
  int degree() const { return degree_; }
  bool empty() const { return runs_.empty(); }

  int Multiplicity(int index) const;
  bool Contains(int index) const { return Multiplicity(index) > 0; }
  // Largest index present, or -1 for the empty multiset.
  int MaxIndex() const;
  // Expanded, sorted index list: {1,2,2,4}.
  std::vector<int> Indices() const;

  // Removes one copy of `index`. Throws std::invalid_argument if absent.
  Multiset WithoutOne(int index) const;

  // Every ordered split (A, B) with A ∪ B == *this, enumerated in a fixed
  // order: the multiplicity assigned to A is counted up run by run.
  std::vector<std::pair<Multiset, Multiset>> Splits() const;

  // All sub-multisets (including empty and *this), sorted.
  std::vector<Multiset> SubMultisets() const;

  // "{0,1,1,3}" using internal zero-based indices.
  std::string ToString() const;

  friend auto operator<=>(const Multiset& a, const Multiset& b) {
    return a.runs_ <=> b.runs_;
  }
  friend bool operator==(const Multiset& a, const Multiset& b) {
    return a.runs_ == b.runs_;
  }

 private:
  explicit Multiset(std::vector<Run> runs);

  std::vector<Run> runs_;
  int degree_ = 0;
};

// Multiplicities add; degrees add.
Multiset Union(const Multiset& a, const Multiset& b);

}  // namespace polybranch

#endif  // POLYBRANCH_MULTISET_H_
