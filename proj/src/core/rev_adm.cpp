// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

RevResult rev_adm(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_adm");
  if (!(params.epsilon > 0.0)) fail(ErrorCode::invalid_argument, "rev_adm: epsilon must be > 0");
  const double wnorm = norm2(w);
  if (wnorm == 0.0) return detail::zero_result(d, w);

  // The iteration runs on the whitened pair, whose D has orthonormal rows:
  // the dual step is then exactly 1 and D D^T is the identity. On the raw
  // reduced system the step overflows. Feasibility is judged on the original D.
  const detail::Whitened wh = detail::whiten(d, w);
  const Matrix& dw = wh.d;
  const Vector& ww = wh.w;
  const std::size_t m = d.cols();
  const double zeta = params.zeta;
  const double mu = params.mu > 0.0 ? params.mu : norm1(ww) / static_cast<double>(ww.size());

  Vector r = matvec_t(dw, ww);
  Vector z(m, 0.0);
  Vector y(ww.size(), 0.0);
  Vector g(m, 0.0);

  auto dual_residual = [&]() {
    Vector t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = g[i] - z[i] + r[i] / mu;
    Vector s = matvec(dw, t);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= ww[i] / mu;
    return s;
  };
  // s^T s / s^T D D^T s, which is 1 on the whitened pair.
  Vector s = dual_residual();
  const Vector dts = matvec_t(dw, s);
  const double alpha = dot(dts, dts) > 0.0 ? dot(s, s) / dot(dts, dts) : 1.0;

  RevResult res;
  while (res.iterations < params.maxiter) {
    ++res.iterations;
    s = dual_residual();
    axpy(-alpha, s, y);
    g = matvec_t(dw, y);
    for (std::size_t i = 0; i < m; ++i) {
      z[i] = g[i] + r[i] / mu;
      if (std::abs(z[i]) > 1.0) z[i] = sign(z[i]);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double step = zeta * mu * (g[i] - z[i]);
      r[i] += step;
      change += step * step;
    }
    // Feasibility alone can hold long before r is optimal (the start point
    // D^T w is already feasible), so r must also have settled.
    if (norm2(sub(matvec(d, r), w)) / wnorm <= params.epsilon &&
        std::sqrt(change) <= params.epsilon * norm2(r)) {
      res.converged = true;
      break;
    }
  }
  detail::debias(wh.d, wh.w, r);
  res.r = std::move(r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
