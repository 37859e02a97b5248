#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "nisekit/mip/linear_program.hpp"

namespace nisekit {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  std::vector<double> values;      // user variable space
  double objective_value = 0.0;    // user sense
  std::vector<double> row_duals;   // per user row, w.r.t. the maximization form
  double duality_gap = 0.0;        // strong-duality residual on the internal form
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-8;
  double cost_tol = 1e-9;
  std::size_t max_iterations = 20000;
  std::size_t bland_after = 50;  // degenerate-pivot streak that triggers Bland's rule
};

namespace detail {

// Two-phase primal simplex on a dense tableau with bounded variables.
// Internal form: maximize c'y, rows Ay {<=,=,>=} b with b >= 0, 0 <= y <= cap.
// Nonbasic variables rest at 0; one resting at its upper bound is kept in a
// "flipped" representation (column negated, rhs shifted by the cap) so the
// pivoting rules stay the textbook at-lower procedure throughout.
class SimplexTableau {
 public:
  SimplexTableau(const LinearProgram& lp, const SimplexOptions& opts) : opts_(opts) {
    lp.validate();
    sense_ = lp.sense == Sense::maximize ? 1.0 : -1.0;

    // User variable -> internal column(s): x = shift + sign*y with y in [0, cap].
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      const double lo = lp.lower[j], hi = lp.upper[j];
      if (std::isfinite(lo)) {
        cols_.push_back({j, +1.0, lo, hi - lo});
      } else if (std::isfinite(hi)) {
        cols_.push_back({j, -1.0, hi, kInfinity});
      } else {
        cols_.push_back({j, +1.0, 0.0, kInfinity});
        cols_.push_back({j, -1.0, 0.0, kInfinity});
      }
    }
    n_struct_ = cols_.size();
    n_user_ = lp.num_vars();
    rows_ = lp.rows.size();

    // Rows rewritten over internal variables, rhs sign-normalized to b >= 0.
    std::vector<std::vector<double>> a(rows_, std::vector<double>(n_struct_, 0.0));
    rhs_norm_.assign(rows_, 0.0);
    rel_norm_.resize(rows_);
    row_flip_.assign(rows_, 1.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double rhs = lp.rows[i].rhs;
      for (std::size_t t = 0; t < n_struct_; ++t) {
        const double cj = lp.rows[i].coeffs[cols_[t].user];
        a[i][t] = cj * cols_[t].sign;
        rhs -= cj * cols_[t].shift;
      }
      Relation rel = lp.rows[i].rel;
      if (rhs < 0.0) {
        for (double& v : a[i]) v = -v;
        rhs = -rhs;
        row_flip_[i] = -1.0;
        rel = rel == Relation::less_equal      ? Relation::greater_equal
              : rel == Relation::greater_equal ? Relation::less_equal
                                               : Relation::equal;
      }
      rhs_norm_[i] = rhs;
      rel_norm_[i] = rel;
    }

    // Column layout: structural | slack or surplus | artificial | rhs.
    slack_col_.assign(rows_, SIZE_MAX);
    art_col_.assign(rows_, SIZE_MAX);
    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rel_norm_[i] != Relation::equal) ++n_slack;
      if (rel_norm_[i] != Relation::less_equal) ++n_art;
    }
    n_total_ = n_struct_ + n_slack + n_art;
    width_ = n_total_ + 1;
    tab_.assign((rows_ + 2) * width_, 0.0);
    cap_.assign(n_total_, kInfinity);
    flipped_.assign(n_total_, false);
    in_basis_.assign(n_total_, false);
    for (std::size_t t = 0; t < n_struct_; ++t) cap_[t] = cols_[t].cap;

    basis_.assign(rows_, SIZE_MAX);
    std::size_t next = n_struct_;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t t = 0; t < n_struct_; ++t) at(i, t) = a[i][t];
      at(i, n_total_) = rhs_norm_[i];
      if (rel_norm_[i] == Relation::less_equal) {
        slack_col_[i] = next;
        at(i, next) = 1.0;
        set_basis(i, next++);
      } else if (rel_norm_[i] == Relation::greater_equal) {
        slack_col_[i] = next;
        at(i, next) = -1.0;
        ++next;
      }
    }
    first_art_ = next;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rel_norm_[i] != Relation::less_equal) {
        art_col_[i] = next;
        at(i, next) = 1.0;
        set_basis(i, next++);
      }
    }

    // Internal maximization costs; objective rows hold reduced costs z - c
    // and the current objective value in the rhs cell.
    cost_.assign(n_total_, 0.0);
    for (std::size_t t = 0; t < n_struct_; ++t) {
      cost_[t] = sense_ * lp.objective[cols_[t].user] * cols_[t].sign;
      objrow(0, t) = -cost_[t];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (art_col_[i] == SIZE_MAX) continue;
      for (std::size_t j = 0; j <= n_total_; ++j) objrow(1, j) -= at(i, j);
      objrow(1, art_col_[i]) += 1.0;  // own column: z - c = -1 - (-1) = 0
    }
  }

  LpStatus run(std::size_t& iterations) {
    if (first_art_ < n_total_) {
      LpStatus s1 = iterate(1, iterations);
      // Phase 1 maximizes -sum(artificials) <= 0, so a genuine unbounded ray
      // cannot exist; the verdict means reduced-cost roundoff pointed at an
      // uncapped column. If the artificials have already vanished the point
      // is feasible and phase 2 can proceed; otherwise fail loudly.
      if (s1 == LpStatus::unbounded) {
        s1 = objrow_c(1, n_total_) >= -opts_.feas_tol * rhs_scale() ? LpStatus::optimal
                                                                    : LpStatus::iteration_limit;
      }
      if (s1 != LpStatus::optimal) return s1;
      if (objrow_c(1, n_total_) < -opts_.feas_tol * rhs_scale()) return LpStatus::infeasible;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (basis_[i] != SIZE_MAX && basis_[i] >= first_art_) evict_artificial(i);
      }
    }
    phase2_ = true;
    return iterate(0, iterations);
  }

  // -- extraction ------------------------------------------------------------

  std::vector<double> internal_values() const {
    std::vector<double> y(n_total_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] != SIZE_MAX) y[basis_[i]] = at_c(i, n_total_);
    }
    for (std::size_t j = 0; j < n_total_; ++j) {
      if (flipped_[j]) y[j] = cap_[j] - y[j];
    }
    return y;
  }

  std::vector<double> user_values() const {
    const std::vector<double> y = internal_values();
    std::vector<double> x(n_user_, 0.0);
    std::vector<bool> seen(n_user_, false);
    for (std::size_t t = 0; t < n_struct_; ++t) {
      const auto& c = cols_[t];
      if (!seen[c.user]) {
        x[c.user] = c.shift;
        seen[c.user] = true;
      }
      x[c.user] += c.sign * y[t];
    }
    return x;
  }

  // Row multipliers of the internal maximization form, mapped to user rows.
  std::vector<double> row_duals() const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double d = 0.0;
      switch (rel_norm_[i]) {
        case Relation::less_equal: d = objrow_c(0, slack_col_[i]); break;
        case Relation::greater_equal: d = -objrow_c(0, slack_col_[i]); break;
        case Relation::equal: d = objrow_c(0, art_col_[i]); break;
      }
      y[i] = d * row_flip_[i];
    }
    return y;
  }

  // |primal - dual| of the internal form: primal = c'y*, dual = y'b plus the
  // bound multipliers max(0, -d_j)*cap_j recovered from final reduced costs.
  double duality_gap() const {
    const std::vector<double> y = internal_values();
    double primal = 0.0;
    for (std::size_t t = 0; t < n_struct_; ++t) primal += cost_[t] * y[t];

    double dual = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double d = 0.0;
      switch (rel_norm_[i]) {
        case Relation::less_equal: d = objrow_c(0, slack_col_[i]); break;
        case Relation::greater_equal: d = -objrow_c(0, slack_col_[i]); break;
        case Relation::equal: d = objrow_c(0, art_col_[i]); break;
      }
      dual += d * rhs_norm_[i];
    }
    for (std::size_t t = 0; t < n_struct_; ++t) {
      if (!std::isfinite(cap_[t]) || in_basis_[t]) continue;
      const double d_true = flipped_[t] ? -objrow_c(0, t) : objrow_c(0, t);
      dual += std::max(0.0, -d_true) * cap_[t];
    }
    return std::abs(primal - dual);
  }

 private:
  struct ColInfo {
    std::size_t user;
    double sign;
    double shift;
    double cap;
  };

  double& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
  [[nodiscard]] double at_c(std::size_t i, std::size_t j) const { return tab_[i * width_ + j]; }
  double& objrow(std::size_t which, std::size_t j) { return tab_[(rows_ + which) * width_ + j]; }
  [[nodiscard]] double objrow_c(std::size_t which, std::size_t j) const {
    return tab_[(rows_ + which) * width_ + j];
  }

  void set_basis(std::size_t row, std::size_t col) {
    if (basis_[row] != SIZE_MAX) in_basis_[basis_[row]] = false;
    basis_[row] = col;
    in_basis_[col] = true;
  }

  [[nodiscard]] double rhs_scale() const {
    double s = 1.0;
    for (double b : rhs_norm_) s = std::max(s, std::abs(b));
    return s;
  }

  // Move a nonbasic column to the other bound: negate it and shift the rhs.
  void flip_column(std::size_t j) {
    const double cap = cap_[j];
    for (std::size_t i = 0; i < rows_ + 2; ++i) {
      double& aij = tab_[i * width_ + j];
      if (aij != 0.0) {
        tab_[i * width_ + n_total_] -= aij * cap;
        aij = -aij;
      }
    }
    flipped_[j] = !flipped_[j];
  }

  void pivot(std::size_t r, std::size_t e) {
    const double inv = 1.0 / at(r, e);
    for (std::size_t j = 0; j <= n_total_; ++j) at(r, j) *= inv;
    at(r, e) = 1.0;
    for (std::size_t i = 0; i < rows_ + 2; ++i) {
      if (i == r) continue;
      const double f = tab_[i * width_ + e];
      if (f == 0.0) continue;
      double* dst = &tab_[i * width_];
      const double* src = &tab_[r * width_];
      for (std::size_t j = 0; j <= n_total_; ++j) dst[j] -= f * src[j];
      tab_[i * width_ + e] = 0.0;
    }
    set_basis(r, e);
  }

  [[nodiscard]] bool may_enter(std::size_t j) const {
    if (in_basis_[j]) return false;
    if (phase2_ && j >= first_art_) return false;   // artificials may not return
    return cap_[j] > opts_.pivot_tol;               // fixed variables cannot move
  }

  LpStatus iterate(std::size_t which, std::size_t& iterations) {
    std::size_t degenerate_streak = 0;
    while (true) {
      if (iterations++ >= opts_.max_iterations) return LpStatus::iteration_limit;
      const bool bland = degenerate_streak >= opts_.bland_after;

      std::size_t e = SIZE_MAX;
      double best = -opts_.cost_tol;
      for (std::size_t j = 0; j < n_total_; ++j) {
        if (!may_enter(j)) continue;
        const double d = objrow_c(which, j);
        if (d < best) {
          e = j;
          best = d;
          if (bland) break;  // Bland: first eligible index
        }
      }
      if (e == SIZE_MAX) return LpStatus::optimal;

      // Ratio test: a basic variable hits 0, a basic variable hits its cap,
      // or the entering variable reaches its own cap (bound flip, no pivot).
      double t_max = cap_[e];
      std::size_t leave = SIZE_MAX;
      bool leave_at_cap = false;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double aie = at_c(i, e);
        double t;
        bool at_cap;
        if (aie > opts_.pivot_tol) {
          t = at_c(i, n_total_) / aie;
          at_cap = false;
        } else if (aie < -opts_.pivot_tol && std::isfinite(cap_[basis_[i]])) {
          t = (cap_[basis_[i]] - at_c(i, n_total_)) / (-aie);
          at_cap = true;
        } else {
          continue;
        }
        t = std::max(t, 0.0);
        const bool takes = t < t_max - 1e-12 ||
                           (t < t_max + 1e-12 && leave != SIZE_MAX &&
                            (bland ? basis_[i] < basis_[leave] : i < leave));
        if (takes) {
          t_max = std::min(t_max, t);
          leave = i;
          leave_at_cap = at_cap;
        }
      }

      if (leave == SIZE_MAX) {
        if (!std::isfinite(t_max)) return LpStatus::unbounded;
        const double improvement = -objrow_c(which, e) * t_max;
        flip_column(e);
        degenerate_streak = improvement <= 1e-12 ? degenerate_streak + 1 : 0;
        continue;
      }

      const double improvement = -objrow_c(which, e) * t_max;
      if (leave_at_cap) {
        // Leaving basic variable exits at its upper bound: pivot, then flip
        // it into the at-lower representation.
        const std::size_t out = basis_[leave];
        pivot(leave, e);
        flip_column(out);
      } else {
        pivot(leave, e);
      }
      degenerate_streak = improvement <= 1e-12 ? degenerate_streak + 1 : 0;
    }
  }

  void evict_artificial(std::size_t r) {
    for (std::size_t j = 0; j < first_art_; ++j) {
      if (in_basis_[j] || cap_[j] <= opts_.pivot_tol) continue;
      if (std::abs(at_c(r, j)) > opts_.pivot_tol) {
        pivot(r, j);
        return;
      }
    }
    // Redundant row: its artificial stays basic at zero and the row is inert.
  }

  SimplexOptions opts_;
  double sense_ = 1.0;
  std::vector<ColInfo> cols_;
  std::vector<double> cost_;
  std::vector<double> tab_;
  std::vector<double> cap_;
  std::vector<bool> flipped_;
  std::vector<bool> in_basis_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> slack_col_, art_col_;
  std::vector<Relation> rel_norm_;
  std::vector<double> row_flip_;
  std::vector<double> rhs_norm_;
  std::size_t n_struct_ = 0, n_total_ = 0, n_user_ = 0, rows_ = 0, width_ = 0, first_art_ = 0;
  bool phase2_ = false;
};

}  // namespace detail

inline LpResult simplex_solve(const LinearProgram& lp, const SimplexOptions& opts = {}) {
  detail::SimplexTableau tab(lp, opts);
  LpResult res;
  res.status = tab.run(res.iterations);
  if (res.status != LpStatus::optimal) return res;
  res.values = tab.user_values();
  res.objective_value = dot(lp.objective, res.values);
  res.row_duals = tab.row_duals();
  res.duality_gap = tab.duality_gap();
  return res;
}

}  // namespace nisekit
