// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Solvers for the residual basis-pursuit problem
//
//   min ||r||_1  s.t.  D r = w                              (exact)
//   min ||r||_1  s.t.  ||D r - w||_2 <= epsilon              (relaxed)
//   min 0.5 ||D r - w||_2^2 + lambda ||r||_1                 (penalised)
//
// Each solver takes the reduced pair (D, w) and returns a residual vector r.
// Iterative solvers never throw on non-convergence: they hand back their last
// iterate with `converged == false`.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/linalg.hpp"
#include "core/reduction.hpp"

namespace l1rev {

struct SolverParams {
  double epsilon = 1e-8;      // stopping / constraint tolerance
  double lambda = 1e-8;       // penalty weight of the penalised form
  std::size_t maxiter = 10000;
  double tau = 0.02;          // proximity step (POB)
  double mu = 0.0;            // penalty (POB, ADM); <= 0 selects the method default
  double zeta = 1.618;        // ADM relaxation
  double zero_tol = kDefaultZeroTol;
  double lp_feas_tol = 1e-9;
  double ptb_c = 1.0;             // perturbation correction length
  std::size_t ptb_maxiter = 15;

  /// Throws ErrorCode::invalid_argument on out-of-range values.
  void validate() const;
};

struct RevResult {
  Vector r;
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;    // ||r||_1
  double feasibility = 0.0;  // ||D r - w||_2
  /// Per-iteration penalised objective, recorded by the shrinkage solver.
  std::vector<double> objective_trace;
  /// Largest active set reached along the homotopy path.
  std::size_t max_support = 0;
};

/// Exact basis pursuit as the LP  min 1^T beta  s.t. [D, -D] beta = w, beta >= 0.
RevResult rev_linprog(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Gradient projection with Barzilai-Borwein steps on the split (r+, r-) form
/// of the penalised problem.
RevResult rev_gpsr(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Truncated-Newton log-barrier interior point for the penalised problem; the
/// Newton systems are solved by preconditioned conjugate gradients.
RevResult rev_tnipm(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Homotopy path of the penalised problem from lambda = ||D^T w||_inf down to
/// `params.lambda`. Throws ErrorCode::numerical when the active-set Gram
/// matrix becomes singular.
RevResult rev_homotopy(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Iterative shrinkage-thresholding with Barzilai-Borwein step lengths.
RevResult rev_ist(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Dual alternating-direction method for the exact problem; stops once
/// ||D r - w|| <= epsilon ||w||.
RevResult rev_adm(const Matrix& d, std::span<const double> w, const SolverParams& params);

/// Primal-dual proximity iteration for the relaxed problem. Requires
/// tau > mu ||D||_2^2 > 0; mu defaults to 0.999 tau / ||D||_2^2.
RevResult rev_pob(const Matrix& d, std::span<const double> w, const SolverParams& params);

inline RevResult rev_linprog(const ReducedSystem& rs, const SolverParams& p) {
  return rev_linprog(rs.d, rs.w, p);
}
inline RevResult rev_gpsr(const ReducedSystem& rs, const SolverParams& p) {
  return rev_gpsr(rs.d, rs.w, p);
}
inline RevResult rev_tnipm(const ReducedSystem& rs, const SolverParams& p) {
  return rev_tnipm(rs.d, rs.w, p);
}
inline RevResult rev_homotopy(const ReducedSystem& rs, const SolverParams& p) {
  return rev_homotopy(rs.d, rs.w, p);
}
inline RevResult rev_ist(const ReducedSystem& rs, const SolverParams& p) {
  return rev_ist(rs.d, rs.w, p);
}
inline RevResult rev_adm(const ReducedSystem& rs, const SolverParams& p) {
  return rev_adm(rs.d, rs.w, p);
}
inline RevResult rev_pob(const ReducedSystem& rs, const SolverParams& p) {
  return rev_pob(rs.d, rs.w, p);
}

namespace detail {
/// Fills objective / feasibility for a finished iterate.
void finish(RevResult& res, const Matrix& d, std::span<const double> w);
/// Result for w == 0, where r = 0 is exactly optimal.
RevResult zero_result(const Matrix& d, std::span<const double> w);
void check_shapes(const Matrix& d, std::span<const double> w, const char* who);

/// (L^{-1} D, L^{-1} w) with D D^T = L L^T, so the rows of the new D are
/// orthonormal and D r = w is unchanged. `scale` is ||L||_2 = ||D||_2, which
/// bounds ||D r - w|| by scale * ||L^{-1}(D r - w)||. Throws
/// ErrorCode::numerical when D lacks full row rank.
struct Whitened {
  Matrix d;
  Vector w;
  double scale = 1.0;
};
Whitened whiten(const Matrix& d, std::span<const double> w);

/// Decreasing penalties lambda_0 > lambda_0 / 10 > ... ending exactly at
/// `lambda`, with lambda_0 = ||D^T w||_inf / 2. A single entry when `lambda`
/// is already that large. The shrinkage solvers stall when started at a tiny
/// lambda, since each step moves the l1 term by about step * lambda; each
/// stage is warm-started from the previous one and uses the same stopping rule.
std::vector<double> continuation_path(const Matrix& d, std::span<const double> w, double lambda);

/// Moves r along null directions of its support columns, never raising
/// ||r||_1, zeroing one entry per step until those columns are independent.
/// D r is unchanged.
void purify(const Matrix& d, Vector& r);

/// Debiasing: purifies r, then moves it to the nearest point with the same
/// support that solves D r = w exactly, r_S -= D_S^T (D_S D_S^T)^{-1}
/// (D_S r_S - w). Leaves r unchanged when the support cannot reach every row
/// of D.
void debias(const Matrix& d, std::span<const double> w, Vector& r);
}  // namespace detail

}  // namespace l1rev
