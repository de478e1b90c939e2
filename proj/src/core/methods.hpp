// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Method catalogue and the top-level solve entry points.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/linalg.hpp"
#include "core/reduction.hpp"
#include "core/rev_solvers.hpp"

namespace l1rev {

enum class RevMethod { linprog, gpsr, tnipm, homotopy, ist, adm, pob };

enum class Method { ptb, lp, res, gpsr, tnipm, hp, ist, adm, pob, oracle };

struct SolveReport {
  std::string label;
  Vector x;
  Vector residual;    // A x - b
  double cost = 0.0;  // ||A x - b||_1
  std::size_t iterations = 0;
  bool converged = true;
  double runtime_seconds = 0.0;
  /// REV-based methods only: the solver's r and ||D r - w||_2, ||w||_2.
  Vector rev;
  double rev_feasibility = 0.0;
  double w_norm = 0.0;
  bool has_rev = false;
  std::vector<std::string> warnings;
};

/// Display label, e.g. "L1-RES".
const char* label(Method m) noexcept;
/// Command-line name, e.g. "l1-res".
const char* cli_name(Method m) noexcept;
const char* solver_name(RevMethod m) noexcept;
std::span<const Method> all_methods() noexcept;

/// Accepts labels, command-line names and REV solver names in any case
/// ("L1-RES", "l1-res", "linprog", "l1-sparsa", ...). Throws
/// ErrorCode::unknown_method listing the valid names.
Method parse_method(std::string_view name);
RevMethod parse_rev_method(std::string_view name);

/// The REV solver behind an L1-* label, if it has one.
bool rev_method_of(Method m, RevMethod& out) noexcept;
Method method_of(RevMethod m) noexcept;

RevResult solve_rev(RevMethod method, const Matrix& d, std::span<const double> w,
                    const SolverParams& params);

/// reduce -> REV solver -> recover.
SolveReport l1_approx_via_min_rev(const MlmProblem& p, RevMethod method,
                                  const SolverParams& params);

/// Runs any catalogued method. The oracle ignores `params`.
SolveReport solve(const MlmProblem& p, Method method, const SolverParams& params);

}  // namespace l1rev
