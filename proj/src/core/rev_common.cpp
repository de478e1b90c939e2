// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

void SolverParams::validate() const {
  auto bad = [](const char* what) { fail(ErrorCode::invalid_argument, what); };
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) bad("params: epsilon must be finite and > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) bad("params: lambda must be finite and >= 0");
  if (maxiter < 1) bad("params: maxiter must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) bad("params: tau must be > 0");
  if (!std::isfinite(mu)) bad("params: mu must be finite");
  if (!(zeta > 0.0 && zeta < 2.0)) bad("params: zeta must lie in (0, 2)");
  if (!(zero_tol >= 0.0)) bad("params: zero_tol must be >= 0");
  if (!(lp_feas_tol >= 0.0)) bad("params: lp_feas_tol must be >= 0");
  if (!(ptb_c > 0.0) || !std::isfinite(ptb_c)) bad("params: ptb_c must be > 0");
  if (ptb_maxiter < 1) bad("params: ptb_maxiter must be >= 1");
}

namespace detail {

void check_shapes(const Matrix& d, std::span<const double> w, const char* who) {
  if (d.rows() != w.size() || d.cols() == 0) {
    std::ostringstream os;
    os << who << ": D is " << d.rows() << "x" << d.cols() << " but w has length " << w.size();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
}

void finish(RevResult& res, const Matrix& d, std::span<const double> w) {
  res.objective = norm1(res.r);
  res.feasibility = norm2(sub(matvec(d, res.r), w));
}

RevResult zero_result(const Matrix& d, std::span<const double> w) {
  RevResult res;
  res.r.assign(d.cols(), 0.0);
  res.converged = true;
  finish(res, d, w);
  return res;
}

Whitened whiten(const Matrix& d, std::span<const double> w) {
  const std::size_t k = d.rows();
  const std::size_t m = d.cols();
  const Matrix g = matmul(d, transpose(d));
  Matrix l(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    double s = g(j, j);
    for (std::size_t p = 0; p < j; ++p) s -= l(j, p) * l(j, p);
    if (!(s > 1e-14 * g(j, j))) fail(ErrorCode::numerical, "whiten: D does not have full row rank");
    l(j, j) = std::sqrt(s);
    for (std::size_t i = j + 1; i < k; ++i) {
      double t = g(i, j);
      for (std::size_t p = 0; p < j; ++p) t -= l(i, p) * l(j, p);
      l(i, j) = t / l(j, j);
    }
  }
  // Forward substitution applied to every column of D and to w at once.
  Whitened out{d, Vector(w.begin(), w.end()), spectral_norm(d)};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t p = 0; p < i; ++p) {
      const double f = l(i, p);
      for (std::size_t c = 0; c < m; ++c) out.d(i, c) -= f * out.d(p, c);
      out.w[i] -= f * out.w[p];
    }
    const double inv = 1.0 / l(i, i);
    for (std::size_t c = 0; c < m; ++c) out.d(i, c) *= inv;
    out.w[i] *= inv;
  }
  return out;
}

std::vector<double> continuation_path(const Matrix& d, std::span<const double> w, double lambda) {
  std::vector<double> path;
  for (double l = 0.5 * norm_inf(matvec_t(d, w)); l > lambda; l *= 0.1) path.push_back(l);
  path.push_back(lambda);
  return path;
}

void purify(const Matrix& d, Vector& r) {
  for (;;) {
    IndexSet support;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] != 0.0) support.push_back(i);
    }
    if (support.empty()) return;
    const Matrix kernel = nullspace_basis(select_cols(d, support));
    if (kernel.cols() == 0) return;
    Vector v = kernel.column(0);
    double slope = 0.0;
    for (std::size_t j = 0; j < support.size(); ++j) slope += sign(r[support[j]]) * v[j];
    if (slope > 0.0) v = scaled(v, -1.0);
    // Step to the first entry that reaches zero; signs stay fixed up to it,
    // so ||r||_1 changes linearly with slope -|slope|.
    double step = std::numeric_limits<double>::infinity();
    std::size_t hit = support.size();
    for (std::size_t j = 0; j < support.size(); ++j) {
      const double rj = r[support[j]];
      if (rj * v[j] < 0.0 && -rj / v[j] < step) {
        step = -rj / v[j];
        hit = j;
      }
    }
    if (hit == support.size()) return;
    for (std::size_t j = 0; j < support.size(); ++j) r[support[j]] += step * v[j];
    r[support[hit]] = 0.0;
  }
}

void debias(const Matrix& d, std::span<const double> w, Vector& r) {
  purify(d, r);
  IndexSet support;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] != 0.0) support.push_back(i);
  }
  if (support.size() < d.rows()) return;
  const Matrix ds = select_cols(d, support);
  const Vector rs = gather(r, support);
  try {
    const Cholesky gram(matmul(ds, transpose(ds)));
    const Vector corr = matvec_t(ds, gram.solve(sub(matvec(ds, rs), w)));
    for (std::size_t j = 0; j < support.size(); ++j) r[support[j]] = rs[j] - corr[j];
  } catch (const Error&) {
    // Rank-deficient support: keep the iterate.
  }
}

}  // namespace detail
}  // namespace l1rev
