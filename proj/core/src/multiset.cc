/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "polybranch/multiset.h"

#include <algorithm>
#include <stdexcept>

namespace polybranch {

Multiset::Multiset(std::vector<Run> runs) : runs_(std::move(runs)) {
  for (const Run& r : runs_) degree_ += r.multiplicity;
}

Multiset Multiset::FromIndices(std::span<const int> indices) {
  std::vector<int> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Run> runs;
  for (int idx : sorted) {
    if (idx < 0) throw std::invalid_argument("negative variable index");
    if (!runs.empty() && runs.back().index == idx) {
      ++runs.back().multiplicity;
    } else {
      runs.push_back({idx, 1});
    }
  }
  return Multiset(std::move(runs));
}

Multiset Multiset::FromIndices(std::initializer_list<int> indices) {
  return FromIndices(std::span<const int>(indices.begin(), indices.size()));
}

Multiset Multiset::FromRuns(std::vector<Run> runs) {
  for (size_t i = 0; i < runs.size(); ++i) {
    if (runs[i].index < 0 || runs[i].multiplicity < 1 ||
        (i > 0 && runs[i - 1].index >= runs[i].index)) {
      throw std::invalid_argument("non-canonical multiset runs");
    }
  }
  return Multiset(std::move(runs));
}

Multiset Multiset::Single(int index, int multiplicity) {
  return FromRuns({{index, multiplicity}});
}

int Multiset::Multiplicity(int index) const {
  auto it = std::lower_bound(
      runs_.begin(), runs_.end(), index,
      [](const Run& r, int i) { return r.index < i; });
  return (it != runs_.end() && it->index == index) ? it->multiplicity : 0;
}

int Multiset::MaxIndex() const {
  return runs_.empty() ? -1 : runs_.back().index;
}

std::vector<int> Multiset::Indices() const {
  std::vector<int> out;
  out.reserve(degree_);
  for (const Run& r : runs_) out.insert(out.end(), r.multiplicity, r.index);
  return out;
}

Multiset Multiset::WithoutOne(int index) const {
  std::vector<Run> runs = runs_;
  auto it = std::find_if(runs.begin(), runs.end(),
                         [index](const Run& r) { return r.index == index; });
  if (it == runs.end()) {
    throw std::invalid_argument("index " + std::to_string(index) +
                                " not in multiset " + ToString());
  }
  if (--it->multiplicity == 0) runs.erase(it);
  return Multiset(std::move(runs));
}

std::vector<std::pair<Multiset, Multiset>> Multiset::Splits() const {
  std::vector<std::pair<Multiset, Multiset>> out;
  std::vector<int> take(runs_.size(), 0);
  while (true) {
    std::vector<Run> a, b;
    for (size_t i = 0; i < runs_.size(); ++i) {
      if (take[i] > 0) a.push_back({runs_[i].index, take[i]});
      if (take[i] < runs_[i].multiplicity) {
        b.push_back({runs_[i].index, runs_[i].multiplicity - take[i]});
      }
    }
    out.emplace_back(Multiset(std::move(a)), Multiset(std::move(b)));
    size_t pos = 0;
    while (pos < runs_.size() && take[pos] == runs_[pos].multiplicity) {
      take[pos++] = 0;
    }
    if (pos == runs_.size()) break;
    ++take[pos];
  }
  return out;
}

std::vector<Multiset> Multiset::SubMultisets() const {
  std::vector<Multiset> out;
  for (auto& [a, b] : Splits()) out.push_back(std::move(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Multiset::ToString() const {
  std::string s = "{";
  bool first = true;
  for (int idx : Indices()) {
    if (!first) s += ",";
    s += std::to_string(idx);
    first = false;
  }
  return s + "}";
}

Multiset Union(const Multiset& a, const Multiset& b) {
  std::vector<Multiset::Run> runs;
  const auto& ra = a.runs();
  const auto& rb = b.runs();
  size_t i = 0, k = 0;
  while (i < ra.size() || k < rb.size()) {
    if (k == rb.size() || (i < ra.size() && ra[i].index < rb[k].index)) {
      runs.push_back(ra[i++]);
    } else if (i == ra.size() || rb[k].index < ra[i].index) {
      runs.push_back(rb[k++]);
    } else {
      runs.push_back({ra[i].index, ra[i].multiplicity + rb[k].multiplicity});
      ++i;
      ++k;
    }
  }
  return Multiset::FromRuns(std::move(runs));
}

}  // namespace polybranch
