// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Baselines that work on (A, b) directly, without the residual reduction.

#pragma once

#include <cstddef>
#include <vector>

#include "core/methods.hpp"

namespace l1rev {

/// min 1^T (r+ + r-)  s.t.  -r+ + r- + A x+ - A x- = b, all parts >= 0.
SolveReport l1_approx_linprog(const MlmProblem& p, double feas_tol = 1e-9);

/// One entry per inner perturbation step.
struct PtbStep {
  double cost_before = 0.0;
  double cost_after = 0.0;
  std::size_t zeros_before = 0;
  std::size_t zeros_after = 0;
};

/// Perturbation method: grows the zero-residual set along kernel directions
/// of A_z, then tests optimality with the decision vector s and, while
/// ||s||_inf > 1, applies the descent correction of length `c`.
/// `trace`, when given, receives every inner step.
SolveReport l1_approx_pert_cbs(const MlmProblem& p, double c = 1.0, std::size_t maxiter = 15,
                               double zero_tol = kDefaultZeroTol,
                               std::vector<PtbStep>* trace = nullptr);

}  // namespace l1rev
