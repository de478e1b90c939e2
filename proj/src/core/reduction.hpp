// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Reduction of the overdetermined l1 problem  min ||A x - b||_1  to basis
// pursuit on the residual vector r = A x - b:
//
//   min ||r||_1  s.t.  D r = w,   D = [-A2 A1^+, I],  w = A2 A1^+ b(0:n) - b(n:m)
//
// where A1 is the top n x n block of A. The minimiser x follows from
// x = A^+ (b + r).

#pragma once

#include <string>
#include <vector>

#include "core/linalg.hpp"

namespace l1rev {

/// The pair (A, b) with m > n >= 2 and finite entries.
class MlmProblem {
 public:
  MlmProblem(Matrix a, Vector b);

  const Matrix& a() const noexcept { return a_; }
  const Vector& b() const noexcept { return b_; }
  std::size_t m() const noexcept { return a_.rows(); }
  std::size_t n() const noexcept { return a_.cols(); }

 private:
  Matrix a_;
  Vector b_;
};

/// A x - b.
Vector residual(const MlmProblem& p, std::span<const double> x);
/// ||A x - b||_1.
double cost_l1(const MlmProblem& p, std::span<const double> x);

struct ReducedSystem {
  Matrix d;        // (m-n) x m
  Vector w;        // m-n
  Matrix a1;       // top n x n block
  Matrix a2;       // bottom (m-n) x n block
  Matrix a1_pinv;
  Matrix a_pinv;
  std::vector<std::string> warnings;
};

ReducedSystem reduce(const MlmProblem& p);

/// x = A^+ (b + r_opt).
Vector recover(const MlmProblem& p, const ReducedSystem& rs, std::span<const double> r_opt);

/// Index sets and sub-blocks induced by the zero pattern of r = A x - b.
struct ResidualSplit {
  IndexSet zero_set;
  IndexSet nonzero_set;
  Matrix a_z;
  Matrix a_star;
  Vector b_z;
  Vector b_star;
  Vector r_z;
  Vector r_star;
  std::size_t m0 = 0;
};

inline constexpr double kDefaultZeroTol = 1e-8;

/// Component i counts as zero when |r_i| <= zero_tol * (1 + ||r||_inf).
ResidualSplit split_by_residual(const MlmProblem& p, std::span<const double> x,
                                double zero_tol = kDefaultZeroTol);

}  // namespace l1rev
