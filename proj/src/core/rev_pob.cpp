// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/error.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

RevResult rev_pob(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_pob");
  const double eps = params.epsilon;
  if (!(eps >= 0.0)) fail(ErrorCode::invalid_argument, "rev_pob: epsilon must be >= 0");
  // Inside the ball already: r = 0 is feasible and has the least l1 norm.
  if (norm2(w) <= eps) return detail::zero_result(d, w);

  // Iterate on the whitened pair. Its ball of radius eps / ||D|| maps into the
  // original ball of radius eps.
  const detail::Whitened wh = detail::whiten(d, w);
  const Matrix& dw = wh.d;
  const Vector& ww = wh.w;
  const double ball = eps / wh.scale;

  const double dnorm2 = std::pow(spectral_norm(dw), 2);
  const double tau = params.tau;
  const double mu = params.mu > 0.0 ? params.mu : 0.999 * tau / dnorm2;
  if (!(tau > mu * dnorm2 && mu * dnorm2 > 0.0)) {
    std::ostringstream os;
    os << "rev_pob: need tau > mu*||D||^2 > 0, got tau=" << tau << " mu=" << mu
       << " ||D||^2=" << dnorm2 << " (whitened D)";
    fail(ErrorCode::invalid_argument, os.str());
  }
  // Exit only inside both the absolute band eps + 1e-6 and the scaled band
  // max(eps, 1e-6 (1 + ||w||)).
  const double stop_feas = std::min(eps + 1e-6, std::max(eps, 1e-6 * (1.0 + norm2(w))));

  const std::size_t m = dw.cols();
  const std::size_t k = dw.rows();
  Vector y(k, 0.0);
  Vector r(m, 0.0);
  Vector z = sub(y, sub(matvec(dw, r), ww));
  Vector t(m), q(k), yz(k);

  RevResult res;
  while (res.iterations < params.maxiter) {
    ++res.iterations;
    const Vector s = r;
    for (std::size_t i = 0; i < k; ++i) yz[i] = 2.0 * y[i] - z[i];
    const Vector dt = matvec_t(dw, yz);
    for (std::size_t i = 0; i < m; ++i) t[i] = s[i] - (mu / tau) * dt[i];
    r = soft(t, 1.0 / tau);

    // The relative-change test alone fires while the iterate is still far
    // from the ball, so it is only honoured once r is feasible.
    const double ns = norm2(s);
    if (ns > 0.0 && norm2(sub(r, s)) / ns < 1e-6 &&
        norm2(sub(matvec(d, r), w)) <= stop_feas) {
      res.converged = true;
      break;
    }
    z = y;
    const Vector dr = matvec(dw, r);
    for (std::size_t i = 0; i < k; ++i) q[i] = dr[i] + z[i] - ww[i];
    const double nq = norm2(q);
    if (nq <= ball) {
      std::fill(y.begin(), y.end(), 0.0);
    } else {
      const double f = 1.0 - ball / nq;
      for (std::size_t i = 0; i < k; ++i) y[i] = f * q[i];
    }
  }
  detail::debias(wh.d, wh.w, r);
  res.r = std::move(r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
