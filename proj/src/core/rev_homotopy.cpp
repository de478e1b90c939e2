// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Step {
  double delta = kInf;
  std::size_t enter = 0;   // index joining the support
  std::size_t shrink = 0;  // index leaving the support (when remove is set)
  bool remove = false;
};

// Smallest positive step at which an off-support correlation reaches the
// boundary or an on-support coefficient crosses zero.
Step next_step(const IndexSet& support, std::span<const double> r_k, std::span<const double> v,
               std::span<const double> p, std::span<const double> dk, double pmax) {
  const std::size_t m = p.size();
  std::vector<char> active(m, 0);
  for (std::size_t i : support) active[i] = 1;

  double d1 = kInf, d2 = kInf;
  std::size_t i1 = m, i2 = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (active[i]) continue;
    const double a = (pmax - p[i]) / (1.0 + dk[i]);
    if (a > 0.0 && a < d1) {
      d1 = a;
      i1 = i;
    }
    const double b = (pmax + p[i]) / (1.0 - dk[i]);
    if (b > 0.0 && b < d2) {
      d2 = b;
      i2 = i;
    }
  }
  Step st;
  if (d1 > d2) {
    st.delta = d2;
    st.enter = i2;
  } else {
    st.delta = d1;
    st.enter = i1;
  }

  double d3 = kInf;
  std::size_t i3 = m;
  for (std::size_t i : support) {
    const double c = -r_k[i] / v[i];
    if (c > 0.0 && c < d3) {
      d3 = c;
      i3 = i;
    }
  }
  if (d3 <= st.delta) {
    st.remove = true;
    st.delta = d3;
    st.shrink = i3;
  }
  return st;
}

std::string describe(const IndexSet& set) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < set.size(); ++k) os << (k ? "," : "") << set[k];
  os << "}";
  return os.str();
}

}  // namespace

RevResult rev_homotopy(const Matrix& d, std::span<const double> w, const SolverParams& params) {
  detail::check_shapes(d, w, "rev_homotopy");
  if (!(params.lambda >= 0.0)) fail(ErrorCode::invalid_argument, "rev_homotopy: lambda must be >= 0");
  const std::size_t m = d.cols();
  const double lambda = params.lambda;

  Vector r(m, 0.0);
  Vector z(m, 0.0);
  Vector p = scaled(matvec_t(d, w), -1.0);
  double pmax = norm_inf(p);

  RevResult res;
  if (pmax <= lambda) {
    // Zero already satisfies the optimality condition at this lambda.
    res.r = std::move(r);
    res.converged = true;
    detail::finish(res, d, w);
    return res;
  }

  IndexSet support;  // kept in insertion order, like the active-set matrix
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(p[i]) == pmax) {
      support.push_back(i);
      z[i] = -sign(p[i]);
      p[i] = pmax * sign(p[i]);
    }
  }
  res.max_support = support.size();

  Vector v(m);
  while (res.iterations < params.maxiter) {
    ++res.iterations;
    const Vector r_k = r;

    const Matrix dg = select_cols(d, support);
    const Matrix gram = matmul(transpose(dg), dg);
    Vector vg;
    try {
      vg = Cholesky(gram).solve(gather(z, support));
    } catch (const Error&) {
      fail(ErrorCode::numerical,
           "rev_homotopy: singular active-set matrix for support " + describe(support));
    }
    std::fill(v.begin(), v.end(), 0.0);
    for (std::size_t k = 0; k < support.size(); ++k) v[support[k]] = vg[k];
    const Vector dk = matvec_t(d, matvec(dg, vg));

    const Step st = next_step(support, r_k, v, p, dk, pmax);
    if (pmax - st.delta <= lambda) {
      r = r_k;
      axpy(pmax - lambda, v, r);
      res.converged = true;
      break;
    }
    r = r_k;
    axpy(st.delta, v, r);
    axpy(st.delta, dk, p);
    pmax -= st.delta;

    if (st.remove) {
      for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k] == st.shrink) {
          support[k] = support.back();
          support.pop_back();
          break;
        }
      }
      r[st.shrink] = 0.0;
      p[st.shrink] = pmax * sign(p[st.shrink]);
    } else {
      support.push_back(st.enter);
      r[st.enter] = 0.0;
    }
    res.max_support = std::max(res.max_support, support.size());

    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i : support) {
      z[i] = -sign(p[i]);
      p[i] = pmax * sign(p[i]);
    }
  }
  res.r = std::move(r);
  detail::finish(res, d, w);
  return res;
}

}  // namespace l1rev
