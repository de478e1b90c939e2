// Copyright 2026 The l1rev Authors
// SPDX-License-Identifier: Apache-2.0

#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace l1rev {

namespace {

std::string dims(const Matrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char* what) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << what << ": length " << a.size() << " vs " << b.size();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
}

}  // namespace

// --- Matrix ----------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "matrix " << rows << "x" << cols << " needs " << rows * cols << " entries, got "
       << data_.size();
    fail(ErrorCode::dimension_mismatch, os.str());
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::dimension_mismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
  return id;
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

// --- products --------------------------------------------------------------

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorCode::dimension_mismatch, "matmul: " + dims(a) + " * " + dims(b));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Vector matvec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    fail(ErrorCode::dimension_mismatch,
         "matvec: " + dims(a) + " * vector of length " + std::to_string(x.size()));
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector matvec_t(const Matrix& a, std::span<const double> y) {
  if (a.rows() != y.size()) {
    fail(ErrorCode::dimension_mismatch,
         "matvec_t: " + dims(a) + "^T * vector of length " + std::to_string(y.size()));
  }
  Vector x(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) axpy(y[i], a.row(i), x);
  return x;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) {
    fail(ErrorCode::dimension_mismatch, "hstack: " + dims(left) + " | " + dims(right));
  }
  Matrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t i = 0; i < left.rows(); ++i) {
    auto o = out.row(i);
    std::copy(left.row(i).begin(), left.row(i).end(), o.begin());
    std::copy(right.row(i).begin(), right.row(i).end(), o.begin() + left.cols());
  }
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) {
    fail(ErrorCode::dimension_mismatch, "vstack: " + dims(top) + " over " + dims(bottom));
  }
  std::vector<double> e(top.entries());
  e.insert(e.end(), bottom.entries().begin(), bottom.entries().end());
  return Matrix(top.rows() + bottom.rows(), top.cols(), std::move(e));
}

Matrix select_rows(const Matrix& a, const IndexSet& rows) {
  Matrix out(rows.size(), a.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= a.rows()) fail(ErrorCode::invalid_argument, "select_rows: index out of range");
    std::copy(a.row(rows[k]).begin(), a.row(rows[k]).end(), out.row(k).begin());
  }
  return out;
}

Matrix select_cols(const Matrix& a, const IndexSet& cols) {
  Matrix out(a.rows(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= a.cols()) fail(ErrorCode::invalid_argument, "select_cols: index out of range");
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, k) = a(i, cols[k]);
  }
  return out;
}

Matrix block(const Matrix& a, std::size_t row0, std::size_t col0, std::size_t rows,
             std::size_t cols) {
  if (row0 + rows > a.rows() || col0 + cols > a.cols()) {
    fail(ErrorCode::dimension_mismatch, "block: window exceeds " + dims(a));
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(row0 + i, col0 + j);
  return out;
}

Vector gather(std::span<const double> v, const IndexSet& idx) {
  Vector out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= v.size()) fail(ErrorCode::invalid_argument, "gather: index out of range");
    out[k] = v[idx[k]];
  }
  return out;
}

Vector slice(std::span<const double> v, std::size_t begin, std::size_t end) {
  if (begin > end || end > v.size()) fail(ErrorCode::dimension_mismatch, "slice: bad range");
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(begin),
                v.begin() + static_cast<std::ptrdiff_t>(end));
}

IndexSet complement(const IndexSet& set, std::size_t n) {
  std::vector<bool> in(n, false);
  for (auto i : set) {
    if (i >= n) fail(ErrorCode::invalid_argument, "complement: index out of range");
    in[i] = true;
  }
  IndexSet out;
  out.reserve(n - set.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

// --- vector arithmetic -------------------------------------------------------

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm2(std::span<const double> v) {
  // Scaled accumulation keeps tiny and huge residuals representable.
  double scale = norm_inf(v);
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double x : v) {
    const double t = x / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return x;
    m = std::max(m, std::abs(x));
  }
  return m;
}

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector sub(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "sub");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(std::span<const double> v, double s) {
  Vector out(v.begin(), v.end());
  for (double& x : out) x *= s;
  return out;
}

void axpy(double s, std::span<const double> x, std::span<double> y) {
  require_same_length(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vector hadamard(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "hadamard");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

Vector elemdiv(std::span<const double> a, std::span<const double> b) {
  require_same_length(a, b, "elemdiv");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] == 0.0) {
      fail(ErrorCode::numerical, "elemdiv: zero divisor at index " + std::to_string(i));
    }
    out[i] = a[i] / b[i];
  }
  return out;
}

Vector positive_part(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? v[i] : 0.0;
  return out;
}

Vector negative_part(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0.0 ? -v[i] : 0.0;
  return out;
}

double sign(double u) noexcept { return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); }

Vector sign_vector(std::span<const double> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = sign(v[i]);
  return out;
}

double soft(double u, double a) noexcept {
  const double mag = std::abs(u) - a;
  return mag > 0.0 ? sign(u) * mag : 0.0;
}

Vector soft(std::span<const double> u, double a) {
  Vector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = soft(u[i], a);
  return out;
}

// --- pseudoinverse ---------------------------------------------------------

double default_rank_tol(const Matrix& a) noexcept {
  return std::numeric_limits<double>::epsilon() *
         static_cast<double>(std::max(a.rows(), a.cols())) * a.max_abs();
}

Matrix pinv(const Matrix& a, double rank_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) fail(ErrorCode::invalid_argument, "pinv: empty matrix");
  constexpr double kColumnRelTol = 1e-10;
  const double base_tol = rank_tol < 0.0 ? default_rank_tol(a) : rank_tol;

  // g holds the pseudoinverse of the leading k columns; row j of g belongs to
  // column j of a.
  Matrix g(n, m);
  Vector ak(m), d, c(m), bk(m);

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) ak[i] = a(i, k);

    // d = G_{k-1} a_k ; c = a_k - A_{k-1} d
    d.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) d[j] = dot(g.row(j), ak);
    c = ak;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += a(i, j) * d[j];
      c[i] -= s;
    }

    const double tol = rank_tol < 0.0 ? std::max(base_tol, kColumnRelTol * norm2(ak)) : base_tol;
    const double cnorm = norm2(c);
    if (cnorm > tol) {
      const double cc = dot(c, c);
      for (std::size_t i = 0; i < m; ++i) bk[i] = c[i] / cc;
    } else {
      // b_k = (1 + d^T d)^{-1} d^T G_{k-1}
      std::fill(bk.begin(), bk.end(), 0.0);
      for (std::size_t j = 0; j < k; ++j) axpy(d[j], g.row(j), bk);
      const double denom = 1.0 + dot(d, d);
      for (double& v : bk) v /= denom;
    }

    // G_k = [G_{k-1} - d b_k ; b_k]
    for (std::size_t j = 0; j < k; ++j) axpy(-d[j], bk, g.row(j));
    std::copy(bk.begin(), bk.end(), g.row(k).begin());
  }
  return g;
}

// --- row echelon / nullspace ----------------------------------------------

namespace {

struct Echelon {
  Matrix r;                   // reduced row echelon form (leading rows)
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> free_cols;
};

Echelon reduced_row_echelon(const Matrix& a, double tol) {
  Echelon e{a, {}, {}};
  Matrix& r = e.r;
  const std::size_t m = r.rows();
  const std::size_t n = r.cols();
  std::size_t prow = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (prow == m) {
      e.free_cols.push_back(j);
      continue;
    }
    std::size_t best = prow;
    for (std::size_t i = prow + 1; i < m; ++i)
      if (std::abs(r(i, j)) > std::abs(r(best, j))) best = i;
    if (std::abs(r(best, j)) <= tol) {
      for (std::size_t i = prow; i < m; ++i) r(i, j) = 0.0;
      e.free_cols.push_back(j);
      continue;
    }
    if (best != prow) std::swap_ranges(r.row(best).begin(), r.row(best).end(), r.row(prow).begin());
    const double piv = r(prow, j);
    for (double& v : r.row(prow)) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == prow) continue;
      const double f = r(i, j);
      if (f != 0.0) axpy(-f, r.row(prow), r.row(i));
    }
    e.pivot_cols.push_back(j);
    ++prow;
  }
  return e;
}

double default_nullspace_tol(const Matrix& a) { return 1e-10 * a.max_abs(); }

}  // namespace

std::size_t numerical_rank(const Matrix& a, double rank_tol) {
  const double tol = rank_tol < 0.0 ? default_nullspace_tol(a) : rank_tol;
  return reduced_row_echelon(a, tol).pivot_cols.size();
}

Matrix nullspace_basis(const Matrix& a, double rank_tol) {
  const std::size_t n = a.cols();
  if (n == 0) fail(ErrorCode::invalid_argument, "nullspace_basis: matrix has no columns");
  const double tol = rank_tol < 0.0 ? default_nullspace_tol(a) : rank_tol;
  const Echelon e = reduced_row_echelon(a, tol);

  std::vector<Vector> basis;
  for (std::size_t f : e.free_cols) {
    Vector v(n, 0.0);
    v[f] = 1.0;
    for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) v[e.pivot_cols[k]] = -e.r(k, f);
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis) axpy(-dot(q, v), q, v);
    const double nv = norm2(v);
    if (nv == 0.0) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }

  Matrix out(n, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) out(i, k) = basis[k][i];
  return out;
}

// --- LU / Cholesky ---------------------------------------------------------

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (n != lu_.cols()) fail(ErrorCode::dimension_mismatch, "LU: matrix not square");
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t best = j;
    for (std::size_t i = j + 1; i < n; ++i)
      if (std::abs(lu_(i, j)) > std::abs(lu_(best, j))) best = i;
    if (best != j) {
      std::swap_ranges(lu_.row(best).begin(), lu_.row(best).end(), lu_.row(j).begin());
      std::swap(perm_[best], perm_[j]);
      perm_sign_ = -perm_sign_;
    }
    const double piv = lu_(j, j);
    if (piv == 0.0) continue;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double f = lu_(i, j) / piv;
      lu_(i, j) = f;
      if (f == 0.0) continue;
      for (std::size_t k = j + 1; k < n; ++k) lu_(i, k) -= f * lu_(j, k);
    }
  }
}

bool LuDecomposition::nonsingular(double pivot_tol) const noexcept {
  for (std::size_t i = 0; i < lu_.rows(); ++i)
    if (!(std::abs(lu_(i, i)) > pivot_tol)) return false;
  return true;
}

double LuDecomposition::determinant() const noexcept {
  double det = perm_sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

Vector LuDecomposition::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) fail(ErrorCode::dimension_mismatch, "LU solve: rhs length");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) x[i] -= lu_(i, k) * x[k];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= lu_(ii, k) * x[k];
    if (lu_(ii, ii) == 0.0) fail(ErrorCode::numerical, "LU solve: singular matrix");
    x[ii] /= lu_(ii, ii);
  }
  return x;
}

Cholesky::Cholesky(const Matrix& a) : l_(a.rows(), a.cols()) {
  const std::size_t n = a.rows();
  if (n != a.cols()) fail(ErrorCode::dimension_mismatch, "Cholesky: matrix not square");
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
    if (!(d > 0.0)) {
      fail(ErrorCode::numerical,
           "Cholesky: matrix not positive definite at pivot " + std::to_string(j));
    }
    l_(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
      l_(i, j) = s / l_(j, j);
    }
  }
}

Vector Cholesky::solve(std::span<const double> b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) fail(ErrorCode::dimension_mismatch, "Cholesky solve: rhs length");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l_(i, k) * y[k];
    y[i] /= l_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) y[ii] -= l_(k, ii) * y[k];
    y[ii] /= l_(ii, ii);
  }
  return y;
}

// --- spectral norm -------------------------------------------------------

double spectral_norm(const Matrix& a, int max_iter, double rel_tol) {
  if (a.empty()) return 0.0;
  Vector v(a.cols(), 1.0 / std::sqrt(static_cast<double>(a.cols())));
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = matvec_t(a, matvec(a, v));
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    const double next = std::sqrt(nw);  // ||A^T A v|| with ||v|| = 1
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
    const bool done = it > 0 && std::abs(next - est) <= rel_tol * next;
    est = next;
    if (done) break;
  }
  // Rayleigh quotient of the final unit vector.
  return std::max(est, norm2(matvec(a, v)));
}

// --- PCG -----------------------------------------------------------------

PcgResult pcg(const LinearOperator& apply_h, std::span<const double> g,
              const LinearOperator& precond_solve, std::span<const double> x0, double tol,
              std::size_t maxiter) {
  const std::size_t n = g.size();
  if (x0.size() != n) fail(ErrorCode::dimension_mismatch, "pcg: initial guess length");

  PcgResult res;
  res.x.assign(x0.begin(), x0.end());
  const double gnorm = norm2(g);
  if (gnorm == 0.0) {
    res.x.assign(n, 0.0);
    res.converged = true;
    return res;
  }

  Vector hx(n), r(n), z(n), p(n), hp(n);
  apply_h(res.x, hx);
  for (std::size_t i = 0; i < n; ++i) r[i] = g[i] - hx[i];
  double rel = norm2(r) / gnorm;
  Vector best = res.x;
  double best_rel = rel;
  if (rel <= tol) {
    res.relative_residual = rel;
    res.converged = true;
    return res;
  }

  precond_solve(r, z);
  p = z;
  double rz = dot(r, z);
  for (std::size_t it = 1; it <= maxiter; ++it) {
    apply_h(p, hp);
    const double php = dot(p, hp);
    if (!(php > 0.0)) break;  // breakdown: H not positive definite along p
    const double alpha = rz / php;
    axpy(alpha, p, res.x);
    axpy(-alpha, hp, r);
    res.iterations = it;
    rel = norm2(r) / gnorm;
    if (rel < best_rel) {
      best_rel = rel;
      best = res.x;
    }
    if (rel <= tol) {
      res.relative_residual = rel;
      res.converged = true;
      return res;
    }
    precond_solve(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  res.x = std::move(best);
  res.relative_residual = best_rel;
  return res;
}

PcgResult pcg(const Matrix& h, std::span<const double> g, const Matrix& p,
              std::span<const double> x0, double tol, std::size_t maxiter) {
  const std::size_t n = g.size();
  if (h.rows() != n || h.cols() != n || p.rows() != n || p.cols() != n) {
    fail(ErrorCode::dimension_mismatch, "pcg: operator and rhs sizes disagree");
  }
  const double sym_tol = 1e-10 * std::max(1.0, h.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(h(i, j) - h(j, i)) > sym_tol) {
        fail(ErrorCode::invalid_argument, "pcg: operator is not symmetric at (" +
                                              std::to_string(i) + "," + std::to_string(j) + ")");
      }
  const Cholesky pre(p);
  auto apply_h = [&h](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < h.rows(); ++i) out[i] = dot(h.row(i), in);
  };
  auto apply_p = [&pre](std::span<const double> in, std::span<double> out) {
    Vector z = pre.solve(in);
    std::copy(z.begin(), z.end(), out.begin());
  };
  return pcg(apply_h, g, apply_p, x0, tol, maxiter);
}

}  // namespace l1rev
