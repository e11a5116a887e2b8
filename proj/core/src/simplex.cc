/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The polybranch Authors
 * SPDX-License-Identifier: Apache-2.0
 */

// Bounded-variable primal revised simplex.
//
// Every row i gets a logical r_i = a_i x whose bounds encode the relation, and
// an artificial t_i >= 0 used only in phase 1:
//
//   A x - r + diag(sigma) t = 0.
//
// The basis always consists of basic structurals S plus at most one unit
// column (logical or artificial) per row. Rows without a basic unit column
// form the set U, and B is nonsingular iff the kernel K = A[U, S] is. Only K
// is factored, so the dense work is bounded by the number of structurals
// instead of the number of rows, which matters for RLT relaxations where
// bound-factor rows vastly outnumber columns.
//
// Inequality rows are loosened by a small deterministic perturbation before
// the solve and restored for a final cleanup pass. A run whose objective
// stops improving is restarted from scratch with a larger perturbation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "polybranch/lp.h"

namespace polybranch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTolerance = 1e-9;
constexpr double kRelativePivotTolerance = 1e-7;
constexpr double kHarrisTolerance = 1e-9;
constexpr double kPerturbationLevels[] = {1e-9, 1e-7, 1e-5};
constexpr double kReducedCostTolerance = 1e-9;
constexpr double kDegenerateStep = 1e-12;
constexpr double kRatioTieTolerance = 1e-12;
constexpr double kPhaseOneTolerance = 1e-8;
constexpr double kProgressTolerance = 1e-9;

struct Stalled {};

enum class VarState { kBasic, kAtLower, kAtUpper };

// Dense LU with partial pivoting for the basis kernel.
class DenseLu {
 public:
  void Factor(std::vector<double> a, int n) {
    n_ = n;
    lu_ = std::move(a);
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), 0);
    for (int k = 0; k < n; ++k) {
      int p = k;
      double best = std::abs(lu_[k * n + k]);
      for (int i = k + 1; i < n; ++i) {
        const double v = std::abs(lu_[i * n + k]);
        if (v > best) {
          best = v;
          p = i;
        }
      }
      if (best < 1e-13) throw LpNumericalError("singular basis kernel");
      if (p != k) {
        for (int c = 0; c < n; ++c) std::swap(lu_[k * n + c], lu_[p * n + c]);
        std::swap(perm_[k], perm_[p]);
      }
      const double pivot = lu_[k * n + k];
      for (int i = k + 1; i < n; ++i) {
        double& l = lu_[i * n + k];
        if (l == 0.0) continue;
        l /= pivot;
        for (int c = k + 1; c < n; ++c) lu_[i * n + c] -= l * lu_[k * n + c];
      }
    }
  }

  // Solves K z = b in place.
  void Solve(std::vector<double>& b) const {
    const int n = n_;
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) z[i] = b[perm_[i]];
    for (int i = 0; i < n; ++i) {
      double s = z[i];
      for (int c = 0; c < i; ++c) s -= lu_[i * n + c] * z[c];
      z[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = z[i];
      for (int c = i + 1; c < n; ++c) s -= lu_[i * n + c] * z[c];
      z[i] = s / lu_[i * n + i];
    }
    b = std::move(z);
  }

  // Solves K^T w = c in place.
  void SolveTransposed(std::vector<double>& c) const {
    const int n = n_;
    std::vector<double> w(c);
    for (int i = 0; i < n; ++i) {
      double s = w[i];
      for (int r = 0; r < i; ++r) s -= lu_[r * n + i] * w[r];
      w[i] = s / lu_[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = w[i];
      for (int r = i + 1; r < n; ++r) s -= lu_[r * n + i] * w[r];
      w[i] = s;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[perm_[i]] = w[i];
    c = std::move(out);
  }

 private:
  int n_ = 0;
  std::vector<double> lu_;
  std::vector<int> perm_;
};

class BoundedSimplex {
 public:
  BoundedSimplex(const LpModel& model, const LpOptions& options, double perturbation,
                 int iteration_budget)
      : model_(model),
        options_(options),
        perturbation_(perturbation),
        iteration_budget_(iteration_budget),
        n_(model.num_cols),
        m_(static_cast<int>(model.rows.size())),
        cols_(n_),
        rows_(m_),
        lo_(n_ + 2 * m_),
        hi_(n_ + 2 * m_),
        x_(n_ + 2 * m_, 0.0),
        state_(n_ + 2 * m_, VarState::kAtLower),
        sigma_(m_, 1.0),
        cover_(m_, -1),
        struct_pos_(n_, -1) {
    for (int i = 0; i < m_; ++i) {
      for (const SparseEntry& e : model.rows[i].coefficients) {
        if (e.value == 0.0) continue;
        rows_[i].push_back(e);
        cols_[e.index].push_back({i, e.value});
      }
    }
    for (int j = 0; j < n_; ++j) {
      lo_[j] = model.col_lower[j];
      hi_[j] = model.col_upper[j];
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = model.rows[i];
      const int r = Logical(i);
      switch (row.relation) {
        case Relation::kGreaterEqual:
          lo_[r] = row.rhs;
          hi_[r] = kInf;
          break;
        case Relation::kLessEqual:
          lo_[r] = -kInf;
          hi_[r] = row.rhs;
          break;
        case Relation::kEqual:
          lo_[r] = hi_[r] = row.rhs;
          break;
      }
      lo_[Artificial(i)] = 0.0;
      hi_[Artificial(i)] = 0.0;
    }
  }

  LpSolution Run() {
    Perturb();
    CrashBasis();

    std::vector<double> cost(n_ + 2 * m_, 0.0);
    bool need_phase_one = false;
    for (int i = 0; i < m_; ++i) {
      if (state_[Artificial(i)] == VarState::kBasic) {
        cost[Artificial(i)] = 1.0;
        need_phase_one = true;
      }
    }
    if (need_phase_one) {
      Iterate(cost, /*phase_one=*/true);
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) infeasibility += std::max(0.0, x_[Artificial(i)]);
      if (infeasibility > kPhaseOneTolerance) {
        LpSolution sol;
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
    }
    for (int i = 0; i < m_; ++i) hi_[Artificial(i)] = 0.0;

    std::fill(cost.begin(), cost.end(), 0.0);
    for (const SparseEntry& e : model_.objective) cost[e.index] += e.value;
    bool bounded = Iterate(cost, /*phase_one=*/false);
    if (bounded) {
      RemovePerturbation();
      bounded = Iterate(cost, /*phase_one=*/false);
    }

    LpSolution sol;
    sol.iterations = iterations_;
    if (!bounded) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }
    sol.status = LpStatus::kOptimal;
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    double obj = model_.objective_offset;
    for (const SparseEntry& e : model_.objective) obj += e.value * sol.primal[e.index];
    sol.objective_value = obj;
    sol.duals = y_;
    return sol;
  }

  int iterations() const { return iterations_; }

 private:
  int Logical(int row) const { return n_ + row; }
  int Artificial(int row) const { return n_ + m_ + row; }
  bool IsStructural(int v) const { return v < n_; }
  int RowOf(int unit_var) const {
    return unit_var < n_ + m_ ? unit_var - n_ : unit_var - n_ - m_;
  }
  double UnitScale(int unit_var) const {
    return unit_var < n_ + m_ ? -1.0 : sigma_[RowOf(unit_var)];
  }

  // Loosens every inequality row by a tiny, row-dependent amount so that
  // degenerate vertices split apart. The loosened problem is a relaxation.
  void Perturb() {
    for (int i = 0; i < m_; ++i) {
      const int r = Logical(i);
      if (lo_[r] == hi_[r]) continue;
      const double u = 0.5 + 0.5 * std::fmod(0.6180339887498949 * (i + 1), 1.0);
      if (lo_[r] != -kInf) lo_[r] -= perturbation_ * (1.0 + std::abs(lo_[r])) * u;
      if (hi_[r] != kInf) hi_[r] += perturbation_ * (1.0 + std::abs(hi_[r])) * u;
    }
  }

  void RemovePerturbation() {
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = model_.rows[i];
      const int r = Logical(i);
      if (row.relation == Relation::kGreaterEqual) lo_[r] = row.rhs;
      if (row.relation == Relation::kLessEqual) hi_[r] = row.rhs;
      if (state_[r] == VarState::kAtLower) x_[r] = lo_[r];
      if (state_[r] == VarState::kAtUpper) x_[r] = hi_[r];
    }
  }

  // Structurals start at their lower bound. A row whose activity fits its
  // logical's range is covered by the logical; otherwise the logical sits at
  // the violated (finite) bound and an artificial absorbs the residual.
  void CrashBasis() {
    for (int j = 0; j < n_; ++j) {
      x_[j] = lo_[j];
      state_[j] = VarState::kAtLower;
    }
    for (int i = 0; i < m_; ++i) {
      double activity = 0.0;
      for (const SparseEntry& e : rows_[i]) activity += e.value * x_[e.index];
      const int r = Logical(i);
      const int t = Artificial(i);
      if (activity >= lo_[r] && activity <= hi_[r]) {
        state_[r] = VarState::kBasic;
        x_[r] = activity;
        cover_[i] = r;
        state_[t] = VarState::kAtLower;
        x_[t] = 0.0;
      } else {
        const bool below = activity < lo_[r];
        state_[r] = below ? VarState::kAtLower : VarState::kAtUpper;
        x_[r] = below ? lo_[r] : hi_[r];
        // a x - r + sigma t = 0  =>  sigma t = r - a x.
        sigma_[i] = (x_[r] - activity) >= 0.0 ? 1.0 : -1.0;
        hi_[t] = kInf;
        state_[t] = VarState::kBasic;
        x_[t] = std::abs(x_[r] - activity);
        cover_[i] = t;
      }
    }
  }

  void Refactor() {
    uncovered_.clear();
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] < 0) uncovered_.push_back(i);
    }
    const int k = static_cast<int>(basic_structs_.size());
    if (static_cast<int>(uncovered_.size()) != k) {
      throw LpNumericalError("basis bookkeeping mismatch");
    }
    for (int p = 0; p < k; ++p) struct_pos_[basic_structs_[p]] = p;
    std::vector<double> kernel(static_cast<size_t>(k) * k, 0.0);
    for (int p = 0; p < k; ++p) {
      for (const SparseEntry& e : rows_[uncovered_[p]]) {
        const int q = struct_pos_[e.index];
        if (q >= 0) kernel[p * k + q] = e.value;
      }
    }
    lu_.Factor(std::move(kernel), k);
  }

  void ComputePrimal() {
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
      for (const SparseEntry& e : cols_[j]) rhs[e.index] -= e.value * x_[j];
    }
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] != Logical(i)) rhs[i] += x_[Logical(i)];
      if (cover_[i] != Artificial(i)) rhs[i] -= sigma_[i] * x_[Artificial(i)];
    }
    const int k = static_cast<int>(basic_structs_.size());
    std::vector<double> z(k);
    for (int p = 0; p < k; ++p) z[p] = rhs[uncovered_[p]];
    lu_.Solve(z);
    for (int p = 0; p < k; ++p) {
      const int j = basic_structs_[p];
      x_[j] = z[p];
      for (const SparseEntry& e : cols_[j]) rhs[e.index] -= e.value * z[p];
    }
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] >= 0) x_[cover_[i]] = rhs[i] / UnitScale(cover_[i]);
    }
  }

  void ComputeDuals(const std::vector<double>& cost) {
    y_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] >= 0) y_[i] = cost[cover_[i]] / UnitScale(cover_[i]);
    }
    const int k = static_cast<int>(basic_structs_.size());
    std::vector<double> w(k);
    for (int p = 0; p < k; ++p) {
      const int j = basic_structs_[p];
      double c = cost[j];
      for (const SparseEntry& e : cols_[j]) {
        if (cover_[e.index] >= 0) c -= e.value * y_[e.index];
      }
      w[p] = c;
    }
    lu_.SolveTransposed(w);
    for (int p = 0; p < k; ++p) y_[uncovered_[p]] = w[p];
  }

  double ReducedCost(int v, const std::vector<double>& cost) const {
    if (IsStructural(v)) {
      double d = cost[v];
      for (const SparseEntry& e : cols_[v]) d -= y_[e.index] * e.value;
      return d;
    }
    const int i = RowOf(v);
    return cost[v] - UnitScale(v) * y_[i];
  }

  // alpha = B^{-1} a_q, split into basic structurals (by kernel position) and
  // covered rows (by row index).
  void ComputeColumn(int q, std::vector<double>& alpha_struct,
                     std::vector<double>& alpha_row) const {
    std::vector<double> b(m_, 0.0);
    if (IsStructural(q)) {
      for (const SparseEntry& e : cols_[q]) b[e.index] = e.value;
    } else {
      b[RowOf(q)] = UnitScale(q);
    }
    const int k = static_cast<int>(basic_structs_.size());
    alpha_struct.assign(k, 0.0);
    for (int p = 0; p < k; ++p) alpha_struct[p] = b[uncovered_[p]];
    lu_.Solve(alpha_struct);
    for (int p = 0; p < k; ++p) {
      if (alpha_struct[p] == 0.0) continue;
      for (const SparseEntry& e : cols_[basic_structs_[p]]) {
        b[e.index] -= e.value * alpha_struct[p];
      }
    }
    alpha_row.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (cover_[i] >= 0) alpha_row[i] = b[i] / UnitScale(cover_[i]);
    }
  }

  // Returns false if the phase objective is unbounded below. Throws Stalled
  // after options_.stall_pivots pivots without objective progress.
  bool Iterate(const std::vector<double>& cost, bool phase_one) {
    int degenerate_run = 0;
    bool bland = false;
    int stalled = 0;
    double best_objective = kInf;
    std::vector<double> alpha_struct, alpha_row;
    while (true) {
      if (iterations_ >= iteration_budget_) {
        throw LpNumericalError("simplex iteration limit reached (" +
                               std::to_string(options_.iteration_limit) + ")");
      }
      Refactor();
      ComputePrimal();
      ComputeDuals(cost);

      double objective = 0.0;
      for (int v = 0; v < n_ + 2 * m_; ++v) {
        if (cost[v] != 0.0) objective += cost[v] * x_[v];
      }
      if (best_objective == kInf ||
          objective < best_objective - kProgressTolerance * (1.0 + std::abs(best_objective))) {
        best_objective = objective;
        stalled = 0;
      } else if (++stalled >= options_.stall_pivots) {
        throw Stalled{};
      }

      int entering = -1;
      double entering_d = 0.0;
      double best_score = 0.0;
      const int total = n_ + 2 * m_;
      for (int v = 0; v < total; ++v) {
        if (state_[v] == VarState::kBasic || lo_[v] == hi_[v]) continue;
        const double d = ReducedCost(v, cost);
        const bool eligible =
            (state_[v] == VarState::kAtLower && d < -kReducedCostTolerance) ||
            (state_[v] == VarState::kAtUpper && d > kReducedCostTolerance);
        if (!eligible) continue;
        if (bland) {
          entering = v;
          entering_d = d;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          entering = v;
          entering_d = d;
        }
      }
      if (entering < 0) return true;

      const double dir = entering_d < 0.0 ? 1.0 : -1.0;
      ComputeColumn(entering, alpha_struct, alpha_row);

      // Ratio test. Basic values move as x_B - dir * theta * alpha.
      int leaving = -1;
      bool leaving_to_upper = false;
      double theta = hi_[entering] - lo_[entering];
      struct Candidate {
        int var;
        double alpha;
        double ratio;
        bool to_upper;
      };
      std::vector<Candidate> candidates;
      double alpha_max = 0.0;
      auto collect = [&](int var, double alpha) {
        alpha_max = std::max(alpha_max, std::abs(alpha));
        if (std::abs(alpha) <= kPivotTolerance) return;
        const double rate = -dir * alpha;
        if (rate < 0.0 && lo_[var] != -kInf) {
          candidates.push_back({var, alpha, (x_[var] - lo_[var]) / -rate, false});
        } else if (rate > 0.0 && hi_[var] != kInf) {
          candidates.push_back({var, alpha, (hi_[var] - x_[var]) / rate, true});
        }
      };
      for (size_t p = 0; p < basic_structs_.size(); ++p) {
        collect(basic_structs_[p], alpha_struct[p]);
      }
      for (int i = 0; i < m_; ++i) {
        if (cover_[i] >= 0) collect(cover_[i], alpha_row[i]);
      }
      const double pivot_floor = std::max(kPivotTolerance, kRelativePivotTolerance * alpha_max);
      if (bland) {
        for (const Candidate& c : candidates) {
          if (std::abs(c.alpha) < pivot_floor) continue;
          const double ratio = std::max(0.0, c.ratio);
          if (ratio < theta - kRatioTieTolerance ||
              (ratio <= theta + kRatioTieTolerance && leaving >= 0 && c.var < leaving)) {
            theta = std::min(theta, ratio);
            leaving = c.var;
            leaving_to_upper = c.to_upper;
          }
        }
      } else {
        // Harris: bound the step with relaxed bounds, then take the largest
        // pivot whose exact ratio fits under that bound.
        double relaxed = theta;
        for (const Candidate& c : candidates) {
          if (std::abs(c.alpha) < pivot_floor) continue;
          const double slack = kHarrisTolerance / std::abs(c.alpha);
          relaxed = std::min(relaxed, std::max(0.0, c.ratio) + slack);
        }
        double best_alpha = 0.0;
        for (const Candidate& c : candidates) {
          if (std::abs(c.alpha) < pivot_floor || c.ratio > relaxed) continue;
          if (std::abs(c.alpha) > best_alpha) {
            best_alpha = std::abs(c.alpha);
            leaving = c.var;
            leaving_to_upper = c.to_upper;
            theta = std::max(0.0, c.ratio);
          }
        }
        if (leaving < 0) {
          // Only tiny pivots remain: fall back to the plain minimum ratio.
          for (const Candidate& c : candidates) {
            const double ratio = std::max(0.0, c.ratio);
            if (ratio < theta) {
              theta = ratio;
              leaving = c.var;
              leaving_to_upper = c.to_upper;
            }
          }
        }
        if (leaving >= 0 && hi_[entering] - lo_[entering] <= theta) leaving = -1;
        if (leaving < 0) theta = hi_[entering] - lo_[entering];
      }

      if (theta == kInf) {
        if (phase_one) throw LpNumericalError("unbounded phase-1 ray");
        return false;
      }
      ++iterations_;
      if (theta <= kDegenerateStep) {
        if (++degenerate_run >= options_.degenerate_pivots_before_bland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      if (leaving < 0) {
        // Bound flip: the entering variable crosses its whole range.
        state_[entering] = state_[entering] == VarState::kAtLower
                               ? VarState::kAtUpper
                               : VarState::kAtLower;
        x_[entering] = state_[entering] == VarState::kAtLower ? lo_[entering]
                                                              : hi_[entering];
        continue;
      }
      Pivot(entering, leaving, leaving_to_upper);
    }
  }

  void Pivot(int entering, int leaving, bool leaving_to_upper) {
    state_[leaving] = leaving_to_upper ? VarState::kAtUpper : VarState::kAtLower;
    x_[leaving] = leaving_to_upper ? hi_[leaving] : lo_[leaving];
    state_[entering] = VarState::kBasic;

    if (IsStructural(leaving)) {
      struct_pos_[leaving] = -1;
      std::erase(basic_structs_, leaving);
    } else {
      cover_[RowOf(leaving)] = -1;
    }
    if (IsStructural(entering)) {
      basic_structs_.insert(
          std::lower_bound(basic_structs_.begin(), basic_structs_.end(), entering),
          entering);
    } else {
      cover_[RowOf(entering)] = entering;
    }
    // A leaving artificial never re-enters: pin it at zero.
    if (!IsStructural(leaving) && leaving >= n_ + m_) {
      hi_[leaving] = 0.0;
      x_[leaving] = 0.0;
      state_[leaving] = VarState::kAtLower;
    }
  }

  const LpModel& model_;
  const LpOptions& options_;
  const double perturbation_;
  const int iteration_budget_;
  const int n_;
  const int m_;
  std::vector<std::vector<SparseEntry>> cols_;  // entry.index = row
  std::vector<std::vector<SparseEntry>> rows_;  // entry.index = column
  std::vector<double> lo_, hi_, x_;
  std::vector<VarState> state_;
  std::vector<double> sigma_;
  std::vector<int> cover_;
  std::vector<int> basic_structs_;  // sorted
  std::vector<int> struct_pos_;
  std::vector<int> uncovered_;
  std::vector<double> y_;
  DenseLu lu_;
  int iterations_ = 0;
};

}  // namespace

LpSolution SolveLp(const LpModel& model, const LpOptions& options) {
  if (auto issues = model.Validate(); !issues.empty()) {
    throw LpNumericalError("malformed LP model: " + issues.front());
  }
  int used = 0;
  for (double perturbation : kPerturbationLevels) {
    BoundedSimplex simplex(model, options, perturbation, options.iteration_limit - used);
    try {
      LpSolution solution = simplex.Run();
      solution.iterations += used;
      return solution;
    } catch (const Stalled&) {
      used += simplex.iterations();
    }
  }
  throw LpNumericalError("simplex stalled at every perturbation level");
}

}  // namespace polybranch
