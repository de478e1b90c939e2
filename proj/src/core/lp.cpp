// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace l1rev {

const char* to_string(LpStatus status) noexcept {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-11;

// Dense simplex tableau. Columns [0, num_struct) are the caller's variables,
// [num_struct, num_cols) are artificials; the last column holds the rhs.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t num_struct, std::size_t num_art)
      : rows_(rows),
        num_struct_(num_struct),
        cols_(num_struct + num_art),
        t_(rows * (cols_ + 1), 0.0),
        d_(cols_ + 1, 0.0),
        basis_(rows, 0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_struct() const { return num_struct_; }
  std::vector<std::size_t>& basis() { return basis_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  /// Rebuilds the reduced-cost row for `cost` (length cols()).
  void price(const Vector& cost) {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (std::size_t j = 0; j < cols_; ++j) d_[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) d_[j] -= cb * at(i, j);
    }
  }

  double reduced_cost(std::size_t j) const { return d_[j]; }
  double objective() const { return -d_[cols_]; }

  void pivot(std::size_t r, std::size_t q) {
    const std::size_t w = cols_ + 1;
    double* pr = &t_[r * w];
    const double inv = 1.0 / pr[q];
    for (std::size_t j = 0; j < w; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* pi = &t_[i * w];
      const double f = pi[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) pi[j] -= f * pr[j];
      pi[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (std::size_t j = 0; j < w; ++j) d_[j] -= f * pr[j];
      d_[q] = 0.0;
    }
    basis_[r] = q;
  }

  void erase_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * w),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t num_struct_;
  std::size_t cols_;
  std::vector<double> t_;
  Vector d_;
  std::vector<std::size_t> basis_;
};

enum class PhaseResult { optimal, unbounded, iteration_limit };

// Dantzig pricing (most negative reduced cost) with the largest pivot among
// minimum-ratio rows. After kStallLimit consecutive degenerate pivots the
// rule falls back to Bland's (lowest-index entering column, lowest-index
// leaving basic variable) until the objective moves again, which rules out
// cycling.
constexpr std::size_t kStallLimit = 50;

PhaseResult run_phase(Tableau& tab, std::size_t entering_limit, double opt_tol,
                      std::size_t maxiter, std::size_t& iterations) {
  std::size_t stalled = 0;
  while (true) {
    const bool bland = stalled >= kStallLimit;
    std::size_t q = entering_limit;
    double most_negative = -opt_tol;
    for (std::size_t j = 0; j < entering_limit; ++j) {
      const double dj = tab.reduced_cost(j);
      if (dj < most_negative) {
        q = j;
        if (bland) break;
        most_negative = dj;
      }
    }
    if (q == entering_limit) return PhaseResult::optimal;
    if (iterations >= maxiter) return PhaseResult::iteration_limit;

    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, q);
      if (a > kPivotTol) best_ratio = std::min(best_ratio, std::max(tab.rhs(i), 0.0) / a);
    }
    if (!std::isfinite(best_ratio)) return PhaseResult::unbounded;
    const double tie = best_ratio + 1e-12 * (1.0 + best_ratio);
    std::size_t r = tab.rows();
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, q);
      if (a <= kPivotTol || std::max(tab.rhs(i), 0.0) / a > tie) continue;
      if (r == tab.rows()) {
        r = i;
      } else if (bland ? tab.basis()[i] < tab.basis()[r] : a > tab.at(r, q)) {
        r = i;
      }
    }
    stalled = best_ratio * std::abs(tab.reduced_cost(q)) > 0.0 ? 0 : stalled + 1;
    tab.pivot(r, q);
    ++iterations;
  }
}

// Recomputes the basic values from the original rows with a fresh LU solve;
// returns false when the basis matrix is numerically singular.
bool polish_basic_values(const Matrix& a, const Vector& b, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& basis, Vector& values) {
  const std::size_t k = rows.size();
  Matrix bm(k, k);
  Vector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = b[rows[i]];
    for (std::size_t j = 0; j < k; ++j) bm(i, j) = a(rows[i], basis[j]);
  }
  const LuDecomposition lu(std::move(bm));
  if (!lu.nonsingular(1e-13 * std::max(1.0, a.max_abs()))) return false;
  values = lu.solve(rhs);
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

LpSolution lp_solve(const LpStandardForm& problem, double feas_tol, std::size_t maxiter) {
  const Matrix& a_in = problem.eq_matrix;
  const std::size_t m = a_in.rows();
  const std::size_t n = a_in.cols();
  if (problem.cost.size() != n || problem.eq_rhs.size() != m) {
    std::ostringstream os;
    os << "lp_solve: eq_matrix " << m << "x" << n << ", cost " << problem.cost.size()
       << ", rhs " << problem.eq_rhs.size();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!a_in.all_finite() || !std::all_of(problem.cost.begin(), problem.cost.end(), finite) ||
      !std::all_of(problem.eq_rhs.begin(), problem.eq_rhs.end(), finite)) {
    fail(ErrorCode::invalid_argument, "lp_solve: non-finite input");
  }
  if (!(feas_tol >= 0.0)) fail(ErrorCode::invalid_argument, "lp_solve: feas_tol must be >= 0");
  if (maxiter == 0) maxiter = 50 * (m + n);

  // Sign-normalise rows so the rhs is non-negative.
  Matrix a = a_in;
  Vector b = problem.eq_rhs;
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      b[i] = -b[i];
      for (double& v : a.row(i)) v = -v;
    }
  }

  // Crash basis: a column with a single positive entry covers its row.
  std::vector<std::size_t> crash(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t nz_row = m;
    std::size_t nz = 0;
    for (std::size_t i = 0; i < m && nz < 2; ++i) {
      if (a(i, j) != 0.0) {
        nz_row = i;
        ++nz;
      }
    }
    if (nz == 1 && a(nz_row, j) > 0.0 && crash[nz_row] == n) crash[nz_row] = j;
  }
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (crash[i] == n) ++num_art;

  Tableau tab(m, n, num_art);
  {
    std::size_t next_art = n;
    for (std::size_t i = 0; i < m; ++i) {
      const double scale = crash[i] == n ? 1.0 : a(i, crash[i]);
      for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = a(i, j) / scale;
      tab.rhs(i) = b[i] / scale;
      if (crash[i] == n) {
        tab.at(i, next_art) = 1.0;
        tab.basis()[i] = next_art++;
      } else {
        tab.basis()[i] = crash[i];
      }
    }
  }

  LpSolution sol;
  const double cost_scale = std::max(1.0, norm_inf(problem.cost));
  const double opt_tol = 1e-10 * cost_scale;
  const double b_scale = 1.0 + norm_inf(b);

  std::vector<std::size_t> kept_rows(m);
  for (std::size_t i = 0; i < m; ++i) kept_rows[i] = i;

  // Phase 1: drive the artificials to zero.
  if (num_art > 0) {
    Vector c1(tab.cols(), 0.0);
    for (std::size_t j = n; j < tab.cols(); ++j) c1[j] = 1.0;
    tab.price(c1);
    const PhaseResult pr = run_phase(tab, tab.cols(), 1e-10, maxiter, sol.iterations);
    if (pr == PhaseResult::iteration_limit) {
      sol.status = LpStatus::iteration_limit;
      sol.point.assign(n, 0.0);
      for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] < n) sol.point[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
      sol.objective = dot(problem.cost, sol.point);
      return sol;
    }
    if (tab.objective() > feas_tol * b_scale) {
      sol.status = LpStatus::infeasible;
      sol.point.assign(n, 0.0);
      sol.objective = std::numeric_limits<double>::quiet_NaN();
      return sol;
    }
    // Pivot zero-level artificials out of the basis, or drop their rows.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (tab.basis()[i] < n) continue;
      std::size_t q = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(tab.at(i, j)) > 1e-9) {
          q = j;
          break;
        }
      }
      if (q < n) {
        tab.pivot(i, q);
      } else {
        tab.erase_row(i);
        kept_rows.erase(kept_rows.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  // Phase 2 over the structural columns only.
  Vector c2(tab.cols(), 0.0);
  std::copy(problem.cost.begin(), problem.cost.end(), c2.begin());
  tab.price(c2);
  const PhaseResult pr = run_phase(tab, n, opt_tol, maxiter, sol.iterations);

  sol.basis = tab.basis();
  sol.point.assign(n, 0.0);
  Vector basic(tab.rows());
  for (std::size_t i = 0; i < tab.rows(); ++i) basic[i] = tab.rhs(i);

  if (pr == PhaseResult::optimal) {
    Vector polished;
    if (polish_basic_values(a, b, kept_rows, tab.basis(), polished)) {
      const bool feasible = std::all_of(polished.begin(), polished.end(),
                                        [&](double v) { return v >= -feas_tol; });
      if (feasible) basic = std::move(polished);
    }
  }
  for (std::size_t i = 0; i < tab.rows(); ++i) sol.point[tab.basis()[i]] = basic[i];
  sol.objective = dot(problem.cost, sol.point);

  switch (pr) {
    case PhaseResult::optimal: sol.status = LpStatus::optimal; break;
    case PhaseResult::unbounded: sol.status = LpStatus::unbounded; break;
    case PhaseResult::iteration_limit: sol.status = LpStatus::iteration_limit; break;
  }
  return sol;
}

}  // namespace l1rev
