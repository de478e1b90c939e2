// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "core/bench.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/reduction.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace l1rev;
using l1rev::testing::gaussian_matrix;
using l1rev::testing::gaussian_vector;
using l1rev::testing::max_abs_diff;

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(MlmProblem(Matrix(3, 2), Vector(2)), Error);
  CHECK_THROWS_AS(MlmProblem(Matrix(2, 2), Vector(2)), Error);
  CHECK_THROWS_AS(MlmProblem(Matrix(3, 1), Vector(3)), Error);
  Matrix bad(3, 2);
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(MlmProblem(bad, Vector(3)), Error);
}

TEST_CASE("reduce with identity top block") {
  const MlmProblem p(Matrix{{1, 0}, {0, 1}, {1, 1}}, Vector{1, 2, 4});
  const ReducedSystem rs = reduce(p);
  CHECK(max_abs_diff(rs.d, Matrix{{-1, -1, 1}}) <= 1e-15);
  REQUIRE(rs.w.size() == 1);
  CHECK(rs.w[0] == doctest::Approx(-1.0));
}

TEST_CASE("reduce with zero bottom block") {
  const MlmProblem p(Matrix{{2, 1}, {1, 3}, {0, 0}, {0, 0}}, Vector{1, 2, 3, -4});
  const ReducedSystem rs = reduce(p);
  CHECK(max_abs_diff(rs.d, Matrix{{0, 0, 1, 0}, {0, 0, 0, 1}}) <= 1e-15);
  CHECK(rs.w[0] == doctest::Approx(-3.0));
  CHECK(rs.w[1] == doctest::Approx(4.0));
}

TEST_CASE("every residual satisfies D r = w") {
  // D (A x - b) = -A2 A1^+ (A1 x - b1) + A2 x - b2 = A2 A1^+ b1 - b2 = w.
  CounterRng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = gaussian_matrix(rng, 6, 3);
    const Vector b = gaussian_vector(rng, 6);
    const MlmProblem p(a, b);
    const ReducedSystem rs = reduce(p);
    for (int k = 0; k < 10; ++k) {
      const Vector x = scaled(gaussian_vector(rng, 3), 3.0);
      const Vector lhs = matvec(rs.d, residual(p, x));
      CHECK(norm_inf(sub(lhs, rs.w)) <= 1e-9 * (1.0 + norm_inf(rs.w)));
    }
  }
}

TEST_CASE("recover") {
  const Instance in = gen_instance(9, 4, 3);
  const ReducedSystem rs = reduce(in.problem);
  const Vector x = recover(in.problem, rs, Vector(9, 0.0));
  CHECK(norm2(sub(x, in.p)) <= 1e-10 * norm2(in.p));

  const Vector zero = recover(in.problem, rs, scaled(in.problem.b(), -1.0));
  CHECK(norm_inf(zero) <= 1e-12);

  const MlmProblem small = l1rev::testing::noisy_problem(3, 2, 5, 0.34);
  const OracleResult o = oracle_solve(small);
  const Vector xr = recover(small, reduce(small), o.report.residual);
  CHECK(norm_inf(sub(xr, o.report.x)) <= 1e-9);
}

TEST_CASE("recover after reduce reproduces p on consistent data") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance in = gen_instance(40, 12, seed);
    const Vector x = recover(in.problem, reduce(in.problem), Vector(40, 0.0));
    CHECK(norm2(sub(x, in.p)) <= 1e-10 * norm2(in.p));
  }
}

TEST_CASE("rank-deficient top block is flagged") {
  const MlmProblem p(Matrix{{1, 1}, {1, 1}, {1, 0}, {0, 1}}, Vector{1, 2, 3, 4});
  const ReducedSystem rs = reduce(p);
  CHECK_FALSE(rs.warnings.empty());
}

TEST_CASE("split_by_residual") {
  const Matrix a{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  {
    const ResidualSplit s = split_by_residual(MlmProblem(a, Vector{1, 2, 3, -1}), Vector{1, 2});
    CHECK(s.m0 == 4);
    CHECK(s.zero_set == IndexSet{0, 1, 2, 3});
    CHECK(s.nonzero_set.empty());
  }
  // x = 0 gives r = -b.
  const ResidualSplit s = split_by_residual(MlmProblem(a, Vector{0, -1, 0, 2}), Vector{0, 0});
  CHECK(s.zero_set == IndexSet{0, 2});
  CHECK(s.nonzero_set == IndexSet{1, 3});
  CHECK(s.r_star == Vector{1, -2});
  CHECK(s.m0 == 2);
  CHECK(s.a_z == Matrix{{1, 0}, {1, 1}});
  CHECK(s.b_star == Vector{-1, 2});
}
