// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace l1rev {

OracleResult oracle_solve(const Matrix& a, const Vector& b, std::size_t max_m, std::size_t max_n) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) fail(ErrorCode::dimension_mismatch, "oracle_solve: b length differs from rows of A");
  if (n < 1 || m < n) fail(ErrorCode::invalid_argument, "oracle_solve: need m >= n >= 1");
  if (m > max_m || n > max_n) {
    std::ostringstream os;
    os << "oracle_solve: " << m << "x" << n << " exceeds the guard " << max_m << "x" << max_n;
    fail(ErrorCode::too_large, os.str());
  }
  if (!a.all_finite()) fail(ErrorCode::invalid_argument, "oracle_solve: non-finite A");

  OracleResult out;
  double best = std::numeric_limits<double>::infinity();
  Vector best_x;

  // Lexicographic enumeration of n-subsets of {0..m-1}.
  IndexSet subset(n);
  for (std::size_t i = 0; i < n; ++i) subset[i] = i;
  while (true) {
    ++out.subsets_tried;
    const Matrix as = select_rows(a, subset);
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale *= norm2(as.row(i));
    const LuDecomposition lu(as);
    if (std::abs(lu.determinant()) <= 1e-12 * scale) {
      ++out.subsets_singular;
    } else {
      Vector x = lu.solve(gather(b, subset));
      double cost = 0.0;
      for (std::size_t i = 0; i < m; ++i) cost += std::abs(dot(a.row(i), x) - b[i]);
      // Strict improvement beyond rounding keeps the earliest subset on ties.
      if (best_x.empty() || cost < best - 1e-12 * (1.0 + best)) {
        best = cost;
        best_x = std::move(x);
        out.subset = subset;
      }
    }

    std::size_t k = n;
    while (k > 0 && subset[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) break;
    ++subset[k - 1];
    for (std::size_t j = k; j < n; ++j) subset[j] = subset[j - 1] + 1;
  }

  if (best_x.empty()) fail(ErrorCode::numerical, "oracle_solve: every row subset is singular");
  SolveReport& rep = out.report;
  rep.label = "oracle";
  rep.x = std::move(best_x);
  rep.residual = sub(matvec(a, rep.x), b);
  rep.cost = norm1(rep.residual);
  rep.iterations = out.subsets_tried;
  rep.converged = true;
  return out;
}

}  // namespace l1rev
