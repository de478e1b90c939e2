// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <limits>

#include "core/rev_solvers.hpp"

namespace l1rev {

namespace {

// Intermediate continuation stages end once their relative duality gap is
// this small; the step-length rule alone keeps them running for thousands of
// iterations along directions where only the l1 term has curvature.
constexpr double kStageGap = 1e-3;

struct GpsrState {
  Vector u, v, r;
  Vector mu;  // tracks D r
  double alpha = 1.0;
};

// Duality gap of the penalised problem over its primal value, with the dual
// point z scaled into ||D^T nu||_inf <= lambda. `g` is D^T z.
double relative_gap(const Vector& z, const Vector& g, std::span<const double> w,
                    const Vector& r, double lambda) {
  const double primal = 0.5 * dot(z, z) + lambda * norm1(r);
  const double gi = norm_inf(g);
  const double c = gi > lambda ? lambda / gi : 1.0;
  const double dual = -0.5 * c * c * dot(z, z) - c * dot(z, w);
  return primal > 0.0 ? (primal - dual) / primal : 0.0;
}

// Barzilai-Borwein projected gradient on the split form at a fixed lambda,
// warm-started from `st`. Returns true when the stopping rule fired.
bool gpsr_stage(const Matrix& d, std::span<const double> w, double lambda, double tol,
                double gap_tol, std::size_t budget, GpsrState& st, std::size_t& iterations) {
  constexpr double alpha_min = 1e-30;
  constexpr double alpha_max = 1e30;
  const std::size_t m = d.cols();
  Vector grad_u(m), grad_v(m), du(m), dv(m), dr(m);
  for (std::size_t it = 0; it < budget; ++it) {
    ++iterations;
    const Vector z = sub(st.mu, w);
    const Vector g = matvec_t(d, z);
    if (gap_tol > 0.0 && relative_gap(z, g, w, st.r, lambda) <= gap_tol) return true;
    for (std::size_t i = 0; i < m; ++i) {
      grad_u[i] = g[i] + lambda;
      grad_v[i] = -grad_u[i] + 2.0 * lambda;
      du[i] = std::max(st.u[i] - st.alpha * grad_u[i], 0.0) - st.u[i];
      dv[i] = std::max(st.v[i] - st.alpha * grad_v[i], 0.0) - st.v[i];
      dr[i] = du[i] - dv[i];
    }
    const double delta = dot(du, du) + dot(dv, dv);
    // Projected gradient step is stationary: (u, v) is a minimiser.
    if (delta == 0.0) return true;

    const Vector ddr = matvec(d, dr);
    const double gamma = dot(ddr, ddr);
    const double beta0 = gamma > 0.0 ? -(dot(grad_u, du) + dot(grad_v, dv)) / gamma
                                     : std::numeric_limits<double>::infinity();
    const double beta = std::min(beta0, 1.0);

    for (std::size_t i = 0; i < m; ++i) {
      const double ui = st.u[i] + beta * du[i];
      const double vi = st.v[i] + beta * dv[i];
      const double y = std::min(ui, vi);
      st.u[i] = ui - y;
      st.v[i] = vi - y;
      st.r[i] = st.u[i] - st.v[i];
    }

    st.alpha = gamma <= 0.0 ? alpha_max : std::clamp(delta / gamma, alpha_min, alpha_max);
    axpy(beta, ddr, st.mu);

    const double nr = norm2(st.r);
    if (nr > 0.0 && norm2(dr) / nr <= tol) return true;
  }
  return false;
}

}  // namespace

RevResult rev_gpsr(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_gpsr");
  if (norm2(w) == 0.0) return detail::zero_result(d, w);
  const detail::Whitened wh = detail::whiten(d, w);
  const std::size_t m = d.cols();

  GpsrState st;
  st.u.assign(m, 0.0);
  st.v.assign(m, 0.0);
  st.r.assign(m, 0.0);
  st.mu.assign(wh.w.size(), 0.0);

  RevResult res;
  const auto path = detail::continuation_path(wh.d, wh.w, params.lambda);
  for (std::size_t k = 0; k < path.size() && res.iterations < params.maxiter; ++k) {
    const bool last = k + 1 == path.size();
    const bool done = gpsr_stage(wh.d, wh.w, path[k], params.epsilon, last ? 0.0 : kStageGap,
                                 params.maxiter - res.iterations, st, res.iterations);
    if (last) res.converged = done;
  }
  detail::debias(wh.d, wh.w, st.r);
  res.r = std::move(st.r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
