#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spectral_chroma {

// Dense row-major real matrix. Used for intermediate (possibly nonsymmetric)
// products; symmetric data lives in SymMatrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> values() const { return data_; }

  Matrix transposed() const;
  double frobenius_norm() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

// Dense real symmetric matrix. Every mutation writes both triangles, so
// entry(i,j) == entry(j,i) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(n, n) {}

  // Copies the upper triangle of `m` (which must be square) into both halves.
  static SymMatrix from_upper(const Matrix& m);
  // Returns (m + mᵀ)/2.
  static SymMatrix symmetrized(const Matrix& m);
  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix outer(std::span<const double> v);  // v vᵀ

  std::size_t size() const noexcept { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  void add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
  }

  const Matrix& dense() const noexcept { return m_; }

  double trace() const;
  double frobenius_norm() const { return m_.frobenius_norm(); }
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
Matrix operator*(const SymMatrix& a, const SymMatrix& b);
Matrix operator*(const Matrix& a, const SymMatrix& b);
Matrix operator*(const SymMatrix& a, const Matrix& b);
std::vector<double> operator*(const SymMatrix& a, std::span<const double> x);

// Frobenius inner product ⟨A, B⟩ = tr(AB).
double inner(const SymMatrix& a, const SymMatrix& b);
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// Q M Qᵀ for a general square Q.
SymMatrix congruence(const Matrix& q, const SymMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column i pairs with values[i]

  std::vector<double> vector(std::size_t i) const;
  SymMatrix reconstruct() const;
};

struct EighOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 60;
};

// Full symmetric eigendecomposition by cyclic Jacobi rotations. Throws
// SolverError with the achieved off-diagonal residual if the sweep limit is
// hit before convergence.
EigenDecomposition eigh(const SymMatrix& m, const EighOptions& opts = {});
std::vector<double> eigvalsh(const SymMatrix& m);
double min_eigenvalue(const SymMatrix& m);

// Lower Cholesky factor; throws SolverError("not positive definite") naming
// the failing pivot if a pivot falls below 1e-12·‖M‖.
Matrix cholesky_spd(const SymMatrix& m);
// Same factorization with an absolute pivot threshold (0 ⇒ any positive pivot).
Matrix cholesky_spd(const SymMatrix& m, double pivot_floor);
std::vector<double> cholesky_solve(const Matrix& lower, std::span<const double> b);
std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> b);
// Inverse from an existing lower factor.
SymMatrix cholesky_inverse(const Matrix& lower);

// λ₁ + … + λ_⌊k⌋ + (k − ⌊k⌋)·λ_⌊k⌋+1 of M, for real 0 ≤ k ≤ n.
double kyfan_sum(const SymMatrix& m, double k);
double kyfan_sum_sorted(std::span<const double> descending, double k);

}  // namespace spectral_chroma
