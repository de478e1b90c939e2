// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

namespace {

constexpr std::size_t kPcgMaxiter = 5000;
constexpr int kMaxHalvings = 100;

// 0.5 z^T z + lambda * sum(u) - sum(log f) / t, with f = [u - r; u + r].
// Returns +inf outside the barrier domain.
double barrier_objective(std::span<const double> z, std::span<const double> r,
                         std::span<const double> u, double lambda, double t) {
  double logsum = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double f1 = u[i] - r[i];
    const double f2 = u[i] + r[i];
    if (!(f1 > 0.0 && f2 > 0.0)) return std::numeric_limits<double>::infinity();
    logsum += std::log(f1) + std::log(f2);
  }
  return 0.5 * dot(z, z) + lambda * sum(u) - logsum / t;
}

}  // namespace

RevResult rev_tnipm(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_tnipm");
  if (!(params.lambda > 0.0)) fail(ErrorCode::invalid_argument, "rev_tnipm: lambda must be > 0");
  if (!(params.epsilon > 0.0)) fail(ErrorCode::invalid_argument, "rev_tnipm: epsilon must be > 0");
  // The gap test below is 0/0 when w = 0; r = 0 is then exact.
  if (norm2(w) == 0.0) return detail::zero_result(d, w);

  // On the whitened pair D^T D is a projection, which keeps the Newton
  // systems well conditioned; on the raw reduced system PCG runs to its cap.
  const detail::Whitened wh = detail::whiten(d, w);
  const std::size_t m = d.cols();
  const double lambda = params.lambda;
  const double eps = params.epsilon;
  constexpr double mu = 2.0;
  constexpr double ls_alpha = 0.01;
  constexpr double ls_beta = 0.5;

  Vector r(m, 0.0);
  Vector u(m, 1.0);
  Vector df(2 * m, 0.0);
  double s = std::numeric_limits<double>::infinity();
  double dobj = -std::numeric_limits<double>::infinity();
  double t = std::min(std::max(1.0, 1.0 / lambda), 2.0 * static_cast<double>(m) / eps);

  Vector b1(m), b2(m), grad(2 * m);
  auto apply_h = [&](std::span<const double> in, std::span<double> out) {
    const std::span<const double> v1 = in.subspan(0, m);
    const std::span<const double> v2 = in.subspan(m, m);
    const Vector dtdv = matvec_t(wh.d, matvec(wh.d, v1));
    for (std::size_t i = 0; i < m; ++i) {
      out[i] = dtdv[i] + b1[i] * v1[i] + b2[i] * v2[i];
      out[m + i] = b2[i] * v1[i] + b1[i] * v2[i];
    }
  };
  // P = [[I + B1, B2], [B2, B1]] decouples into m independent 2x2 blocks.
  auto apply_pinv = [&](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < m; ++i) {
      const double a11 = 1.0 + b1[i];
      const double a12 = b2[i];
      const double a22 = b1[i];
      const double det = a11 * a22 - a12 * a12;
      out[i] = (a22 * in[i] - a12 * in[m + i]) / det;
      out[m + i] = (a11 * in[m + i] - a12 * in[i]) / det;
    }
  };

  RevResult res;
  Vector r_new(m), u_new(m);
  while (res.iterations < params.maxiter) {
    ++res.iterations;
    const Vector z = sub(matvec(wh.d, r), wh.w);
    Vector nu = z;
    const double dtnu = norm_inf(matvec_t(wh.d, nu));
    if (dtnu > lambda) {
      for (double& v : nu) v *= lambda / dtnu;
    }
    const double pobj = 0.5 * dot(z, z) + lambda * norm1(r);
    dobj = std::max(-0.5 * dot(nu, nu) - dot(nu, wh.w), dobj);
    const double eta = pobj - dobj;

    if (dobj > 0.0 && eta / dobj < eps) {
      res.converged = true;
      break;
    }
    if (s >= 0.5) t = std::max(mu * std::min(2.0 * static_cast<double>(m) / eta, t), t);

    const Vector dtz = matvec_t(wh.d, z);
    for (std::size_t i = 0; i < m; ++i) {
      const double q1 = 1.0 / (u[i] + r[i]);
      const double q2 = 1.0 / (u[i] - r[i]);
      grad[i] = dtz[i] - (q1 - q2) / t;
      grad[m + i] = lambda - (q1 + q2) / t;
      b1[i] = (q1 * q1 + q2 * q2) / t;
      b2[i] = (q1 * q1 - q2 * q2) / t;
    }
    const double pcg_tol = std::min(0.1, eps * eta / std::min(1.0, norm2(grad)));
    const PcgResult sol = pcg(apply_h, scaled(grad, -1.0), apply_pinv, df, pcg_tol, kPcgMaxiter);
    df = sol.x;

    const double f_cur = barrier_objective(z, r, u, lambda, t);
    const double slope = dot(grad, df);
    s = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings <= kMaxHalvings; ++halvings) {
      for (std::size_t i = 0; i < m; ++i) {
        r_new[i] = r[i] + s * df[i];
        u_new[i] = u[i] + s * df[m + i];
      }
      // Every component of f' = [u' - r'; u' + r'] must stay positive.
      const Vector z_new = sub(matvec(wh.d, r_new), wh.w);
      const double f_new = barrier_objective(z_new, r_new, u_new, lambda, t);
      if (std::isfinite(f_new) && f_new - f_cur <= ls_alpha * s * slope) {
        accepted = true;
        break;
      }
      s *= ls_beta;
    }
    if (!accepted) break;  // keep the last accepted iterate
    r.swap(r_new);
    u.swap(u_new);
  }
  detail::debias(wh.d, wh.w, r);
  res.r = std::move(r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
