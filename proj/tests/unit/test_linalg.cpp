// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/random.hpp"
#include "doctest.h"
#include "support/test_support.hpp"

using namespace l1rev;
using l1rev::testing::gaussian_matrix;
using l1rev::testing::gaussian_vector;
using l1rev::testing::max_abs_diff;

TEST_CASE("matmul hand examples") {
  CHECK(matmul(Matrix::identity(2), Matrix::identity(2)) == Matrix::identity(2));
  CHECK(matmul(Matrix{{1, 2}, {3, 4}}, Matrix{{1}, {1}}) == Matrix{{3}, {7}});
  const Matrix a{{1, 2, 3}, {4, 5, 6}};
  CHECK(matmul(a, Matrix(3, 2)) == Matrix(2, 2));
}

TEST_CASE("matrix constructors validate shapes") {
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>{1, 2, 3}), Error);
  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), Error);
  CHECK_THROWS_AS(matvec(Matrix(2, 3), Vector{1, 2}), Error);
}

TEST_CASE("block helpers") {
  const Matrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  CHECK(select_rows(a, {0, 2}) == Matrix{{1, 2, 3}, {7, 8, 9}});
  CHECK(select_cols(a, {1}) == Matrix{{2}, {5}, {8}});
  CHECK(block(a, 1, 1, 2, 2) == Matrix{{5, 6}, {8, 9}});
  CHECK(hstack(Matrix{{1}}, Matrix{{2, 3}}) == Matrix{{1, 2, 3}});
  CHECK(vstack(Matrix{{1, 2}}, Matrix{{3, 4}}) == Matrix{{1, 2}, {3, 4}});
  CHECK(transpose(Matrix{{1, 2, 3}}) == Matrix{{1}, {2}, {3}});
  CHECK(complement({1, 3}, 5) == IndexSet{0, 2, 4});
  CHECK(gather(Vector{5, 6, 7}, {0, 2}) == Vector{5, 7});
}

TEST_CASE("norms and element-wise operations") {
  CHECK(norm1(Vector{1, -2, 3}) == 6.0);
  CHECK(norm_inf(Vector{1, -4, 3}) == 4.0);
  CHECK(norm2(Vector{3, 4}) == doctest::Approx(5.0));
  CHECK(positive_part(Vector{1, -2}) == Vector{1, 0});
  CHECK(negative_part(Vector{1, -2}) == Vector{0, 2});
  CHECK(hadamard(Vector{1, 2}, Vector{3, 4}) == Vector{3, 8});
  CHECK(elemdiv(Vector{3, 8}, Vector{3, 4}) == Vector{1, 2});
  CHECK_THROWS_AS(elemdiv(Vector{1}, Vector{0}), Error);
  CHECK(sign_vector(Vector{-2, 0, 5}) == Vector{-1, 0, 1});
}

TEST_CASE("positive and negative parts split every vector") {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector v = gaussian_vector(rng, 7);
    const Vector vp = positive_part(v);
    const Vector vm = negative_part(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(vp[i] >= 0.0);
      CHECK(vm[i] >= 0.0);
      CHECK(vp[i] - vm[i] == v[i]);
    }
    CHECK(norm1(v) == doctest::Approx(sum(add(vp, vm))).epsilon(1e-15));
  }
}

TEST_CASE("soft threshold examples and identities") {
  CHECK(soft(3.0, 1.0) == 2.0);
  CHECK(soft(-3.0, 1.0) == -2.0);
  CHECK(soft(0.5, 1.0) == 0.0);
  CHECK(soft(-0.5, 1.0) == 0.0);
  CHECK(soft(1.0, 1.0) == 0.0);
  CHECK(soft(2.5, 0.0) == 2.5);
  CHECK(soft(Vector{3, -3, 0.5}, 1.0) == Vector{2, -2, 0});

  CounterRng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const double u = 4.0 * rng.normal();
    const double v = 4.0 * rng.normal();
    const double a = std::abs(rng.normal());
    CHECK(soft(-u, a) == -soft(u, a));
    // (u - a) - (v - a) may round one ulp away from u - v.
    const double ulps = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(u) + std::abs(v) + a);
    CHECK(std::abs(soft(u, a) - soft(v, a)) <= std::abs(u - v) + ulps);
    if (std::abs(u) <= a) CHECK(soft(u, a) == 0.0);
  }
}

TEST_CASE("pinv examples") {
  CHECK(max_abs_diff(pinv(Matrix::identity(3)), Matrix::identity(3)) == 0.0);
  const Matrix g = pinv(Matrix{{3}, {4}});
  REQUIRE(g.rows() == 1);
  REQUIRE(g.cols() == 2);
  CHECK(g(0, 0) == doctest::Approx(3.0 / 25.0));
  CHECK(g(0, 1) == doctest::Approx(4.0 / 25.0));
  CHECK(pinv(Matrix(2, 3)) == Matrix(3, 2));
}

TEST_CASE("pinv satisfies the Penrose conditions") {
  CounterRng rng(13);
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t n = 1; n <= 8; ++n) {
      Matrix a = gaussian_matrix(rng, m, n);
      // Every third shape gets a duplicated column to exercise rank deficiency.
      if ((m + n) % 3 == 0 && n >= 2)
        for (std::size_t i = 0; i < m; ++i) a(i, n - 1) = a(i, 0);
      const Matrix g = pinv(a);
      const double tol = 1e-9 * (1.0 + a.max_abs());
      CHECK(max_abs_diff(matmul(matmul(a, g), a), a) <= tol);
      CHECK(max_abs_diff(matmul(matmul(g, a), g), g) <= tol);
      const Matrix ag = matmul(a, g);
      const Matrix ga = matmul(g, a);
      CHECK(max_abs_diff(transpose(ag), ag) <= tol);
      CHECK(max_abs_diff(transpose(ga), ga) <= tol);
    }
  }
}

TEST_CASE("nullspace examples") {
  const Matrix k = nullspace_basis(Matrix{{1, 1}});
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(k(1, 0) == doctest::Approx(-k(0, 0)));
  CHECK(nullspace_basis(Matrix::identity(2)).cols() == 0);
}

TEST_CASE("nullspace residual and orthonormality") {
  CounterRng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + static_cast<std::size_t>(trial % 4);
    const std::size_t cols = rows + 1 + static_cast<std::size_t>(trial % 3);
    Matrix a = gaussian_matrix(rng, rows, cols);
    if (trial % 5 == 0 && rows >= 2)
      for (std::size_t j = 0; j < cols; ++j) a(rows - 1, j) = 2.0 * a(0, j);
    const Matrix v = nullspace_basis(a);
    CHECK(v.cols() == cols - numerical_rank(a));
    CHECK(matmul(a, v).max_abs() <= 1e-10);
    CHECK(max_abs_diff(matmul(transpose(v), v), Matrix::identity(v.cols())) <= 1e-10);
  }
}

TEST_CASE("LU and Cholesky solves") {
  const Matrix a{{4, 1}, {1, 3}};
  const Vector x = LuDecomposition(a).solve(Vector{1, 2});
  CHECK(x[0] == doctest::Approx(1.0 / 11.0));
  CHECK(x[1] == doctest::Approx(7.0 / 11.0));
  CHECK(LuDecomposition(a).determinant() == doctest::Approx(11.0));
  const Vector y = Cholesky(a).solve(Vector{1, 2});
  CHECK(y[0] == doctest::Approx(1.0 / 11.0));
  CHECK_THROWS_AS(Cholesky(Matrix{{1, 2}, {2, 1}}), Error);
  CHECK_FALSE(LuDecomposition(Matrix{{1, 2}, {2, 4}}).nonsingular(1e-12));
}

TEST_CASE("pcg examples") {
  const Matrix eye = Matrix::identity(3);
  const Vector b{1, -2, 3};
  const PcgResult r1 = pcg(eye, b, eye, Vector(3, 0.0), 1e-12, 50);
  CHECK(r1.converged);
  CHECK(r1.iterations == 1);
  CHECK(max_abs_diff(Matrix(3, 1, r1.x), Matrix(3, 1, b)) <= 1e-15);

  const Matrix h{{4, 1}, {1, 3}};
  const PcgResult r2 = pcg(h, Vector{1, 2}, Matrix::identity(2), Vector(2, 0.0), 1e-12, 50);
  CHECK(r2.converged);
  CHECK(r2.x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-12));
  CHECK(r2.x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-12));

  const PcgResult r3 = pcg(h, Vector{1, 2}, h, Vector(2, 0.0), 1e-12, 50);
  CHECK(r3.converged);
  CHECK(r3.iterations == 1);
}

TEST_CASE("pcg matches a direct solve on random SPD systems") {
  CounterRng rng(15);
  for (std::size_t dim = 1; dim <= 20; ++dim) {
    const Matrix g = gaussian_matrix(rng, dim, dim);
    Matrix h = matmul(transpose(g), g);
    for (std::size_t i = 0; i < dim; ++i) h(i, i) += 1.0;
    Matrix p(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) p(i, i) = h(i, i);
    const Vector rhs = gaussian_vector(rng, dim);
    const Vector direct = LuDecomposition(h).solve(rhs);
    const PcgResult it = pcg(h, rhs, p, Vector(dim, 0.0), 1e-14, 10 * dim);
    CHECK(norm2(sub(it.x, direct)) <= 1e-8 * norm2(direct));
  }
}

TEST_CASE("spectral norm by power iteration") {
  CHECK(spectral_norm(Matrix{{3, 0}, {0, -5}}) == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(spectral_norm(Matrix{{1, 1}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(spectral_norm(Matrix(2, 2)) == 0.0);
}
