#include "spectral_chroma/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectral_chroma/errors.hpp"

namespace spectral_chroma {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
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

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

SymMatrix SymMatrix::from_upper(const Matrix& m) {
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, m(i, j));
  return s;
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::outer(std::span<const double> v) {
  SymMatrix s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i; j < v.size(); ++j) s.set(i, j, v[i] * v[j]);
  return s;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < size(); ++i) t += m_(i, i);
  return t;
}

double SymMatrix::max_abs() const {
  double r = 0.0;
  for (double v : m_.values()) r = std::max(r, std::abs(v));
  return r;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  m_ += o.m_;
  return *this;
}
SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  m_ -= o.m_;
  return *this;
}
SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
Matrix operator*(const SymMatrix& a, const SymMatrix& b) { return a.dense() * b.dense(); }
Matrix operator*(const Matrix& a, const SymMatrix& b) { return a * b.dense(); }
Matrix operator*(const SymMatrix& a, const Matrix& b) { return a.dense() * b; }
std::vector<double> operator*(const SymMatrix& a, std::span<const double> x) { return a.dense() * x; }

double inner(const SymMatrix& a, const SymMatrix& b) {
  return dot(a.dense().values(), b.dense().values());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SymMatrix congruence(const Matrix& q, const SymMatrix& m) {
  return SymMatrix::symmetrized(q * m.dense() * q.transposed());
}

std::vector<double> EigenDecomposition::vector(std::size_t i) const {
  std::vector<double> v(vectors.rows());
  for (std::size_t r = 0; r < vectors.rows(); ++r) v[r] = vectors(r, i);
  return v;
}

SymMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = values.size();
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += vectors(i, k) * values[k] * vectors(j, k);
      m.set(i, j, s);
    }
  return m;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& m, const EighOptions& opts) {
  const std::size_t n = m.size();
  Matrix a = m.dense();
  Matrix v = Matrix::identity(n);
  const double scale = m.frobenius_norm();
  const double target = opts.relative_tolerance * scale;

  int sweep = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweep++ >= opts.max_sweeps)
      throw SolverError("eigh: Jacobi sweep limit reached, off-diagonal residual " +
                        std::to_string(off));
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation annihilating a(p,q); t is the smaller root of t² + 2θt − 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> eigvalsh(const SymMatrix& m) { return eigh(m).values; }

double min_eigenvalue(const SymMatrix& m) {
  if (m.size() == 0) return 0.0;
  return eigvalsh(m).back();
}

Matrix cholesky_spd(const SymMatrix& m) { return cholesky_spd(m, 1e-12 * std::max(m.max_abs(), 1e-300)); }

Matrix cholesky_spd(const SymMatrix& m, double tol) {
  const std::size_t n = m.size();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    auto lj = l.row(j);
    for (std::size_t k = 0; k < j; ++k) d -= lj[k] * lj[k];
    if (!(d > tol))
      throw SolverError("not positive definite: pivot " + std::to_string(j) + " is " + std::to_string(d));
    const double ljj = std::sqrt(d);
    lj[j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      auto li = l.row(i);
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      li[j] = s / ljj;
    }
  }
  return l;
}

std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    auto li = lower.row(i);
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= li[k] * x[k];
    x[i] = s / li[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= lower(k, i) * x[k];
    x[i] = s / lower(i, i);
  }
  return x;
}

std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> b) {
  if (b.size() != m.size()) throw InputError("solve_spd: dimension mismatch");
  return cholesky_solve(cholesky_spd(m), b);
}

SymMatrix cholesky_inverse(const Matrix& lower) {
  const std::size_t n = lower.rows();
  // Invert L in place (lower triangular), then form L⁻ᵀL⁻¹.
  Matrix li(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    li(j, j) = 1.0 / lower(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= lower(i, k) * li(k, j);
      li(i, j) = s / lower(i, i);
    }
  }
  SymMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = j; k < n; ++k) s += li(k, i) * li(k, j);
      inv.set(i, j, s);
    }
  return inv;
}

double kyfan_sum_sorted(std::span<const double> descending, double k) {
  const double n = static_cast<double>(descending.size());
  if (!(k >= 0.0 && k <= n)) throw InputError("kyfan_sum: k out of range [0, n]");
  const auto whole = static_cast<std::size_t>(std::floor(k));
  double s = 0.0;
  for (std::size_t i = 0; i < whole; ++i) s += descending[i];
  const double frac = k - static_cast<double>(whole);
  if (frac > 0.0) s += frac * descending[whole];
  return s;
}

double kyfan_sum(const SymMatrix& m, double k) {
  if (!(k >= 0.0 && k <= static_cast<double>(m.size())))
    throw InputError("kyfan_sum: k out of range [0, n]");
  if (k == 0.0) return 0.0;
  return kyfan_sum_sorted(eigvalsh(m), k);
}

}  // namespace spectral_chroma
