// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "core/error.hpp"
#include "core/lp.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

RevResult rev_linprog(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_linprog");
  const std::size_t m = d.cols();

  LpStandardForm lp;
  lp.cost.assign(2 * m, 1.0);
  lp.eq_matrix = Matrix(d.rows(), 2 * m);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      lp.eq_matrix(i, j) = d(i, j);
      lp.eq_matrix(i, m + j) = -d(i, j);
    }
  }
  lp.eq_rhs.assign(w.begin(), w.end());
  const LpSolution sol = lp_solve(lp, params.lp_feas_tol, 0);
  if (sol.status == LpStatus::infeasible || sol.status == LpStatus::unbounded) {
    fail(ErrorCode::internal,
         std::string("rev_linprog: LP reported ") + to_string(sol.status) +
             " for a reduced system, which is always feasible and bounded");
  }

  RevResult res;
  res.r.resize(m);
  for (std::size_t i = 0; i < m; ++i) res.r[i] = sol.point[i] - sol.point[m + i];
  res.iterations = sol.iterations;
  res.converged = sol.status == LpStatus::optimal;
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
