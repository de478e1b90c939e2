// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "core/linalg.hpp"

namespace l1rev {

/// min cost^T y  subject to  eq_matrix * y = eq_rhs,  y >= 0.
struct LpStandardForm {
  Vector cost;
  Matrix eq_matrix;
  Vector eq_rhs;

  std::size_t dimension() const noexcept { return cost.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

const char* to_string(LpStatus status) noexcept;

struct LpSolution {
  Vector point;
  double objective = 0.0;
  LpStatus status = LpStatus::optimal;
  std::size_t iterations = 0;
  /// Indices of the basic variables at exit (one per non-redundant row).
  std::vector<std::size_t> basis;
};

inline constexpr double kDefaultFeasTol = 1e-9;

/// Two-phase primal simplex on a dense tableau. Pricing is Dantzig's rule
/// with a switch to Bland's rule on long degenerate stretches, so the method
/// terminates and returns a vertex. Rows that remain covered only by a zero artificial after phase 1
/// are dropped as redundant. `maxiter == 0` selects 50 * (rows + cols).
/// Infeasibility, unboundedness and the iteration cap are reported through
/// `status`; NaN or infinite input throws.
LpSolution lp_solve(const LpStandardForm& problem, double feas_tol = kDefaultFeasTol,
                    std::size_t maxiter = 0);

}  // namespace l1rev
