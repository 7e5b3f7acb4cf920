// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CEOPT_SIMPLEX_HPP_
#define CEOPT_SIMPLEX_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "ceopt/common.hpp"

namespace ceopt {

// maximize c.x  subject to  a.x (<=|==) b,  x >= 0.
template <class T>
struct DenseLp {
  struct Row {
    std::vector<T> a;
    char rel = '<';  // '<' or '='
    T b = T(0);
  };
  int num_vars = 0;
  std::vector<T> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class T>
struct DenseLpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<T> x;
  T objective = T(0);
};

// Dense two-phase tableau simplex with Bland's anti-cycling rule. With an
// exact scalar type (eps = 0) the solve is exact and guaranteed to terminate;
// with doubles pass a small feasibility tolerance such as 1e-9. Always
// returns a basic solution, so x has at most one nonzero per constraint row.
template <class T>
class SimplexSolver {
 public:
  explicit SimplexSolver(T eps) : eps_(std::move(eps)) {}

  DenseLpSolution<T> solve(const DenseLp<T>& lp) {
    build(lp);
    if (num_artificial_ > 0) {
      set_phase1_costs();
      if (!run()) throw InternalError("simplex: phase 1 unbounded");
      if (phase1_objective() > eps_) return {LpStatus::kInfeasible, {}, T(0)};
      purge_artificials();
    }
    set_phase2_costs(lp);
    if (!run()) return {LpStatus::kUnbounded, {}, T(0)};
    DenseLpSolution<T> out;
    out.status = LpStatus::kOptimal;
    out.x.assign(lp.num_vars, T(0));
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < lp.num_vars) out.x[basis_[i]] = rhs_[i];
    for (int j = 0; j < lp.num_vars; ++j)
      out.objective += lp.objective[j] * out.x[j];
    return out;
  }

 private:
  void build(const DenseLp<T>& lp) {
    const int m = static_cast<int>(lp.rows.size());
    int cols = lp.num_vars;
    for (const auto& r : lp.rows)
      if (r.rel == '<') ++cols;
    first_artificial_ = cols;
    num_artificial_ = 0;
    std::vector<int> art_for_row(m, -1);
    for (int i = 0; i < m; ++i) {
      const auto& r = lp.rows[i];
      // A '<' row with negative rhs flips into a '>=' row, which (like an
      // equality) starts from an artificial basic variable.
      if (r.rel == '=' || (r.rel == '<' && r.b < T(0)))
        art_for_row[i] = num_artificial_++;
    }
    cols += num_artificial_;
    tab_.assign(m, std::vector<T>(cols, T(0)));
    rhs_.assign(m, T(0));
    basis_.assign(m, -1);
    forbidden_.assign(cols, false);
    ncols_ = cols;

    int slack = lp.num_vars;
    for (int i = 0; i < m; ++i) {
      const auto& r = lp.rows[i];
      if (static_cast<int>(r.a.size()) != lp.num_vars)
        throw DimensionError("simplex: row has wrong arity");
      const bool flip = r.b < T(0);
      for (int j = 0; j < lp.num_vars; ++j)
        tab_[i][j] = flip ? -r.a[j] : r.a[j];
      rhs_[i] = flip ? -r.b : r.b;
      if (r.rel == '<') {
        tab_[i][slack] = flip ? T(-1) : T(1);
        if (!flip) basis_[i] = slack;
        ++slack;
      }
      if (art_for_row[i] >= 0) {
        const int aj = first_artificial_ + art_for_row[i];
        tab_[i][aj] = T(1);
        basis_[i] = aj;
      }
    }
  }

  T phase1_objective() const {
    T z(0);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= first_artificial_) z += rhs_[i];
    return z;
  }

  void set_phase1_costs() {
    cost_.assign(ncols_, T(0));
    for (int j = first_artificial_; j < ncols_; ++j) cost_[j] = T(1);
    price_out();
  }

  void set_phase2_costs(const DenseLp<T>& lp) {
    cost_.assign(ncols_, T(0));
    for (int j = 0; j < lp.num_vars; ++j) cost_[j] = -lp.objective[j];
    price_out();
  }

  // reduced_[j] = cost_[j] - sum_i cost_[basis_i] * tab_[i][j].
  void price_out() {
    reduced_ = cost_;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const T cb = cost_[basis_[i]];
      if (cb == T(0)) continue;
      for (int j = 0; j < ncols_; ++j) reduced_[j] -= cb * tab_[i][j];
    }
  }

  // Minimizes cost_ over the current tableau. False means unbounded.
  bool run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < ncols_; ++j) {
        if (forbidden_[j]) continue;
        if (reduced_[j] < -eps_) {
          enter = j;  // Bland: lowest improving index enters
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!(tab_[i][enter] > eps_)) continue;
        if (leave < 0) {
          leave = static_cast<int>(i);
          continue;
        }
        const T lhs = rhs_[i] * tab_[leave][enter];
        const T rhs = rhs_[leave] * tab_[i][enter];
        // Bland again: on ratio ties the lowest basic index leaves.
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leave]))
          leave = static_cast<int>(i);
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    const T piv = tab_[row][col];
    for (int j = 0; j < ncols_; ++j) tab_[row][j] /= piv;
    rhs_[row] /= piv;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      const T f = tab_[i][col];
      if (f == T(0)) continue;
      for (int j = 0; j < ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
      rhs_[i] -= f * rhs_[row];
      if (rhs_[i] < T(0) && rhs_[i] > -eps_) rhs_[i] = T(0);
    }
    const T f = reduced_[col];
    if (f != T(0))
      for (int j = 0; j < ncols_; ++j) reduced_[j] -= f * tab_[row][j];
    basis_[row] = col;
  }

  // Pivot leftover artificials out of the basis; rows that only touch
  // artificial columns are redundant and are dropped outright, so no
  // artificial can creep back above zero in phase 2.
  void purge_artificials() {
    for (std::size_t i = 0; i < basis_.size();) {
      if (basis_[i] < first_artificial_) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (tab_[i][j] > eps_ || tab_[i][j] < -eps_) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(static_cast<int>(i), col);
        ++i;
      } else {
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (int j = first_artificial_; j < ncols_; ++j) forbidden_[j] = true;
  }

  T eps_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> rhs_, cost_, reduced_;
  std::vector<int> basis_;
  std::vector<bool> forbidden_;
  int ncols_ = 0, first_artificial_ = 0, num_artificial_ = 0;
};

template <class T>
DenseLpSolution<T> solve_dense_lp(const DenseLp<T>& lp, T eps) {
  SimplexSolver<T> s(std::move(eps));
  return s.solve(lp);
}

}  // namespace ceopt

#endif  // CEOPT_SIMPLEX_HPP_
