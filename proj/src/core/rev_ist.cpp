// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <deque>

#include "core/rev_solvers.hpp"

namespace l1rev {

namespace {

// Shrinkage iteration at a fixed lambda, warm-started from r. `s` tracks
// D r - w. A step is accepted once f drops below the largest of the last few
// objectives by sigma/2 * alpha * ||dr||^2, doubling alpha otherwise: the raw
// Barzilai-Borwein step oscillates and then blows up on small lambda. Returns
// true when the stopping rule fired.
bool ist_stage(const Matrix& d, double lambda, double tol, std::size_t budget, Vector& r,
               Vector& s, RevResult& res) {
  constexpr double alpha_min = 1e-30;
  constexpr double alpha_max = 1e30;
  constexpr std::size_t kMemory = 5;
  constexpr double kSigma = 1e-5;
  constexpr int kMaxDoublings = 200;
  const std::size_t m = d.cols();
  double alpha = 1.0;
  double f = 0.5 * dot(s, s) + lambda * norm1(r);
  std::deque<double> recent{f};
  Vector step(m), dr(m), z, s_next;
  for (std::size_t it = 0; it < budget; ++it) {
    ++res.iterations;
    const Vector grad = matvec_t(d, s);
    const Vector r_prev = r;
    const double f_prev = f;
    const double f_ref = *std::max_element(recent.begin(), recent.end());

    for (int k = 0;; ++k) {
      for (std::size_t i = 0; i < m; ++i) step[i] = r_prev[i] - grad[i] / alpha;
      r = soft(step, lambda / alpha);
      dr = sub(r, r_prev);
      z = matvec(d, dr);
      s_next = add(s, z);
      f = 0.5 * dot(s_next, s_next) + lambda * norm1(r);
      if (f <= f_ref - 0.5 * kSigma * alpha * dot(dr, dr) || k == kMaxDoublings ||
          alpha >= alpha_max) {
        break;
      }
      alpha = std::min(2.0 * alpha, alpha_max);
    }
    s = std::move(s_next);
    res.objective_trace.push_back(f);
    recent.push_back(f);
    if (recent.size() > kMemory) recent.pop_front();

    const double delta = dot(dr, dr);
    const double gamma = dot(z, z);
    if (delta > 0.0) alpha = std::clamp(gamma / delta, alpha_min, alpha_max);

    // f_prev == 0 means the previous iterate already attained the minimum.
    if (f_prev == 0.0 || std::abs(f - f_prev) / f_prev <= tol) return true;
  }
  return false;
}

}  // namespace

RevResult rev_ist(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_ist");
  if (norm2(w) == 0.0) return detail::zero_result(d, w);
  const detail::Whitened wh = detail::whiten(d, w);

  Vector r(d.cols(), 0.0);
  Vector s = scaled(wh.w, -1.0);
  RevResult res;
  const auto path = detail::continuation_path(wh.d, wh.w, params.lambda);
  res.objective_trace.push_back(0.5 * dot(s, s));
  for (std::size_t k = 0; k < path.size() && res.iterations < params.maxiter; ++k) {
    const bool last = k + 1 == path.size();
    const bool done = ist_stage(wh.d, path[k], params.epsilon, params.maxiter - res.iterations, r, s, res);
    if (last) res.converged = done;
  }
  detail::debias(wh.d, wh.w, r);
  res.r = std::move(r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
