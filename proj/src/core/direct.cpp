// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "core/lp.hpp"

namespace l1rev {

SolveReport l1_approx_linprog(const MlmProblem& p, double feas_tol) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const Matrix& a = p.a();

  LpStandardForm lp;
  lp.cost.assign(2 * m + 2 * n, 0.0);
  std::fill(lp.cost.begin(), lp.cost.begin() + static_cast<std::ptrdiff_t>(2 * m), 1.0);
  lp.eq_matrix = Matrix(m, 2 * m + 2 * n);
  for (std::size_t i = 0; i < m; ++i) {
    lp.eq_matrix(i, i) = -1.0;
    lp.eq_matrix(i, m + i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      lp.eq_matrix(i, 2 * m + j) = a(i, j);
      lp.eq_matrix(i, 2 * m + n + j) = -a(i, j);
    }
  }
  lp.eq_rhs = p.b();
  const LpSolution sol = lp_solve(lp, feas_tol, 0);
  if (sol.status == LpStatus::infeasible || sol.status == LpStatus::unbounded) {
    fail(ErrorCode::numerical, std::string("l1_approx_linprog: LP status ") + to_string(sol.status));
  }

  SolveReport rep;
  rep.label = "L1-LP";
  rep.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) rep.x[j] = sol.point[2 * m + j] - sol.point[2 * m + n + j];
  rep.residual = residual(p, rep.x);
  rep.cost = norm1(rep.residual);
  rep.iterations = sol.iterations;
  rep.converged = sol.status == LpStatus::optimal;
  return rep;
}

namespace {

IndexSet zero_positions(std::span<const double> r, double zero_tol) {
  const double thresh = zero_tol * (1.0 + norm_inf(r));
  IndexSet z;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (std::abs(r[i]) <= thresh) z.push_back(i);
  return z;
}

// First orthonormal kernel direction of A_z; for an empty zero set every
// direction qualifies and e_1 is used.
Vector kernel_direction(const Matrix& a, const IndexSet& zero_set) {
  const std::size_t n = a.cols();
  if (zero_set.empty()) {
    Vector d(n, 0.0);
    d[0] = 1.0;
    return d;
  }
  const Matrix basis = nullspace_basis(select_rows(a, zero_set));
  if (basis.cols() == 0) {
    fail(ErrorCode::numerical, "l1_approx_pert_cbs: kernel of A_z is trivial with " +
                                   std::to_string(zero_set.size()) + " < n zero residuals");
  }
  return basis.column(0);
}

}  // namespace

SolveReport l1_approx_pert_cbs(const MlmProblem& p, double c, std::size_t maxiter,
                               double zero_tol, std::vector<PtbStep>* trace) {
  if (!(c > 0.0)) fail(ErrorCode::invalid_argument, "l1_approx_pert_cbs: c must be > 0");
  if (maxiter < 1) fail(ErrorCode::invalid_argument, "l1_approx_pert_cbs: maxiter must be >= 1");
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const Matrix& a = p.a();

  Vector x(n, 0.0);
  SolveReport rep;
  rep.label = "L1-PTB";
  rep.converged = false;

  std::size_t iter = 0;
  while (iter < maxiter) {
    ++iter;
    Vector r = residual(p, x);
    IndexSet zs = zero_positions(r, zero_tol);

    // Each pass adds at least one zero, so m passes is a hard ceiling.
    for (std::size_t pass = 0; zs.size() < n; ++pass) {
      if (pass >= m) fail(ErrorCode::numerical, "l1_approx_pert_cbs: zero set stopped growing");
      const IndexSet nz = complement(zs, m);
      const Vector d = kernel_direction(a, zs);
      const Vector ad = matvec(select_rows(a, nz), d);
      const Vector r_star = gather(r, nz);
      const double ad_scale = norm_inf(ad);

      double best_f = std::numeric_limits<double>::infinity();
      double best_step = 0.0;
      for (std::size_t i = 0; i < nz.size(); ++i) {
        if (std::abs(ad[i]) <= 1e-14 * ad_scale) continue;
        const double step = -r_star[i] / ad[i];
        double f = 0.0;
        for (std::size_t k = 0; k < nz.size(); ++k) f += std::abs(r_star[k] + step * ad[k]);
        if (f < best_f || (f == best_f && std::abs(step) < std::abs(best_step))) {
          best_f = f;
          best_step = step;
        }
      }
      if (!std::isfinite(best_f)) {
        fail(ErrorCode::numerical, "l1_approx_pert_cbs: kernel direction leaves every residual fixed");
      }

      PtbStep st;
      st.cost_before = norm1(r);
      st.zeros_before = zs.size();
      axpy(best_step, d, x);
      r = residual(p, x);
      zs = zero_positions(r, zero_tol);
      st.cost_after = norm1(r);
      st.zeros_after = zs.size();
      if (trace) trace->push_back(st);
    }

    const IndexSet nz = complement(zs, m);
    const Matrix a_z = select_rows(a, zs);
    const Matrix a_star = select_rows(a, nz);
    const Vector g = matvec_t(a_star, sign_vector(gather(r, nz)));
    const Vector s = matvec(pinv(transpose(a_z)), g);
    if (norm_inf(s) <= 1.0) {
      rep.converged = true;
      break;
    }
    Vector e(zs.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(s[i]) > 1.0) e[i] = 1.0;
    axpy(c, matvec(pinv(a_z), e), x);
  }

  rep.x = std::move(x);
  rep.residual = residual(p, rep.x);
  rep.cost = norm1(rep.residual);
  rep.iterations = iter;
  return rep;
}

}  // namespace l1rev
