// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Exact minimum-l1 fit for small instances by enumerating interpolating row
// subsets.

#pragma once

#include <cstddef>

#include "core/linalg.hpp"
#include "core/methods.hpp"

namespace l1rev {

struct OracleResult {
  SolveReport report;
  IndexSet subset;  // rows interpolated by the optimum
  std::size_t subsets_tried = 0;
  std::size_t subsets_singular = 0;
};

/// Accepts any m >= n >= 1, so square systems and scalar (median) fits work.
/// Throws ErrorCode::too_large beyond the guards and ErrorCode::numerical when
/// every subset is singular. Ties go to the lexicographically smallest subset.
OracleResult oracle_solve(const Matrix& a, const Vector& b, std::size_t max_m = 14,
                          std::size_t max_n = 4);

inline OracleResult oracle_solve(const MlmProblem& p, std::size_t max_m = 14,
                                 std::size_t max_n = 4) {
  return oracle_solve(p.a(), p.b(), max_m, max_n);
}

}  // namespace l1rev
