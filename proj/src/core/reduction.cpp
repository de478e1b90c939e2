// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/reduction.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace l1rev {

MlmProblem::MlmProblem(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() != b_.size()) {
    std::ostringstream os;
    os << "problem: A has " << a_.rows() << " rows but b has length " << b_.size();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
  if (a_.cols() < 2 || a_.rows() <= a_.cols()) {
    std::ostringstream os;
    os << "problem: need m > n >= 2, got m=" << a_.rows() << " n=" << a_.cols();
    fail(ErrorCode::invalid_argument, os.str());
  }
  if (!a_.all_finite()) fail(ErrorCode::invalid_argument, "problem: A has non-finite entries");
  for (double v : b_)
    if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, "problem: b has non-finite entries");
}

Vector residual(const MlmProblem& p, std::span<const double> x) {
  return sub(matvec(p.a(), x), p.b());
}

double cost_l1(const MlmProblem& p, std::span<const double> x) { return norm1(residual(p, x)); }

ReducedSystem reduce(const MlmProblem& p) {
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  const std::size_t k = m - n;

  ReducedSystem rs;
  rs.a1 = block(p.a(), 0, 0, n, n);
  rs.a2 = block(p.a(), n, 0, k, n);
  rs.a1_pinv = pinv(rs.a1);
  rs.a_pinv = pinv(p.a());

  const std::size_t rank_a1 = numerical_rank(rs.a1);
  if (rank_a1 < n) {
    std::ostringstream os;
    os << "top block A1 has numerical rank " << rank_a1 << " < n=" << n
       << "; the reduction may lose minimisers";
    rs.warnings.push_back(os.str());
  }

  const Matrix c = matmul(rs.a2, rs.a1_pinv);  // (m-n) x n
  rs.d = Matrix(k, m);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) rs.d(i, j) = -c(i, j);
    rs.d(i, n + i) = 1.0;
  }
  const Vector top = slice(p.b(), 0, n);
  rs.w = matvec(c, top);
  for (std::size_t i = 0; i < k; ++i) rs.w[i] -= p.b()[n + i];
  return rs;
}

Vector recover(const MlmProblem& p, const ReducedSystem& rs, std::span<const double> r_opt) {
  if (r_opt.size() != p.m()) {
    std::ostringstream os;
    os << "recover: residual has length " << r_opt.size() << ", expected " << p.m();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
  return matvec(rs.a_pinv, add(p.b(), r_opt));
}

ResidualSplit split_by_residual(const MlmProblem& p, std::span<const double> x, double zero_tol) {
  if (x.size() != p.n()) fail(ErrorCode::dimension_mismatch, "split_by_residual: x length");
  const Vector r = residual(p, x);
  const double thresh = zero_tol * (1.0 + norm_inf(r));

  ResidualSplit s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i]) <= thresh) {
      s.zero_set.push_back(i);
    } else {
      s.nonzero_set.push_back(i);
    }
  }
  s.m0 = s.zero_set.size();
  s.a_z = select_rows(p.a(), s.zero_set);
  s.a_star = select_rows(p.a(), s.nonzero_set);
  s.b_z = gather(p.b(), s.zero_set);
  s.b_star = gather(p.b(), s.nonzero_set);
  s.r_z = gather(r, s.zero_set);
  s.r_star = gather(r, s.nonzero_set);
  return s;
}

}  // namespace l1rev
