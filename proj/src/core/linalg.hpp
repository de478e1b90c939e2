// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

// Dense real linear algebra used by every solver: a row-major matrix value
// type, vector helpers, the Moore-Penrose inverse (Greville recursion),
// nullspace bases, preconditioned conjugate gradients and the shrinkage
// operator.

#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace l1rev {

using Vector = std::vector<double>;

/// Strictly increasing 0-based positions into some ambient dimension.
using IndexSet = std::vector<std::size_t>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  /// Takes ownership of `entries` (row-major); size must be rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  Vector column(std::size_t j) const;

  const std::vector<double>& entries() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// --- products ------------------------------------------------------------

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// a * x
Vector matvec(const Matrix& a, std::span<const double> x);
/// a^T * y
Vector matvec_t(const Matrix& a, std::span<const double> y);

Matrix hstack(const Matrix& left, const Matrix& right);
Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix select_rows(const Matrix& a, const IndexSet& rows);
Matrix select_cols(const Matrix& a, const IndexSet& cols);
Matrix block(const Matrix& a, std::size_t row0, std::size_t col0, std::size_t rows,
             std::size_t cols);
Vector gather(std::span<const double> v, const IndexSet& idx);
Vector slice(std::span<const double> v, std::size_t begin, std::size_t end);
/// {0..n-1} minus `set`, in increasing order.
IndexSet complement(const IndexSet& set, std::size_t n);

// --- vector arithmetic -----------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b);
double norm1(std::span<const double> v);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double sum(std::span<const double> v);

Vector add(std::span<const double> a, std::span<const double> b);
Vector sub(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> v, double s);
/// y += s * x
void axpy(double s, std::span<const double> x, std::span<double> y);

/// Element-wise product.
Vector hadamard(std::span<const double> a, std::span<const double> b);
/// Element-wise quotient; throws on a zero divisor.
Vector elemdiv(std::span<const double> a, std::span<const double> b);
/// max(v, 0) component-wise.
Vector positive_part(std::span<const double> v);
/// max(-v, 0) component-wise, so v = v+ - v-.
Vector negative_part(std::span<const double> v);
/// -1, 0 or +1 per component.
Vector sign_vector(std::span<const double> v);
double sign(double u) noexcept;

/// Shrinkage: sign(u) * max(|u| - a, 0).
double soft(double u, double a) noexcept;
Vector soft(std::span<const double> u, double a);

// --- decompositions and solvers -------------------------------------------

/// Default zero-column tolerance: machine epsilon * max(m, n) * max|a_ij|.
double default_rank_tol(const Matrix& a) noexcept;

/// Moore-Penrose inverse by Greville's column recursion. Columns whose
/// residual against the span of the previous columns has 2-norm at most
/// `rank_tol` are treated as dependent. A negative tolerance selects
/// max(default_rank_tol(a), 1e-10 * ||a_k||) per column, since the rounding
/// left in the residual of a dependent column scales with that column.
Matrix pinv(const Matrix& a, double rank_tol = -1.0);

/// Orthonormal basis (as columns) of {p : a p = 0}, from a reduced row echelon
/// form with partial pivoting followed by Gram-Schmidt. Negative tolerance
/// selects 1e-10 * max|a_ij|.
Matrix nullspace_basis(const Matrix& a, double rank_tol = -1.0);

/// Number of pivots found by the same elimination nullspace_basis uses.
std::size_t numerical_rank(const Matrix& a, double rank_tol = -1.0);

/// LU factorisation with partial pivoting of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);

  /// True when every pivot exceeded `pivot_tol` in magnitude.
  bool nonsingular(double pivot_tol = 0.0) const noexcept;
  double determinant() const noexcept;
  /// Throws ErrorCode::numerical on an exactly zero pivot.
  Vector solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
};

/// Cholesky factor of a symmetric positive definite matrix.
class Cholesky {
 public:
  /// Throws ErrorCode::numerical when a pivot is not positive.
  explicit Cholesky(const Matrix& a);
  Vector solve(std::span<const double> b) const;

 private:
  Matrix l_;
};

/// Largest singular value estimated by power iteration on a^T a: stops after
/// `max_iter` sweeps or when the estimate changes by less than `rel_tol`.
double spectral_norm(const Matrix& a, int max_iter = 100, double rel_tol = 1e-12);

struct PcgResult {
  Vector x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const double> in, std::span<double> out)>;

/// Preconditioned conjugate gradients for H x = g, with `precond_solve`
/// applying P^{-1}. Stops once ||H x - g|| <= tol * ||g||; otherwise returns
/// the iterate with the smallest residual seen.
PcgResult pcg(const LinearOperator& apply_h, std::span<const double> g,
              const LinearOperator& precond_solve, std::span<const double> x0, double tol,
              std::size_t maxiter);

/// Dense form: H and P must be symmetric (P also positive definite).
PcgResult pcg(const Matrix& h, std::span<const double> g, const Matrix& p,
              std::span<const double> x0, double tol, std::size_t maxiter);

}  // namespace l1rev
