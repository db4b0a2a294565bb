#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace ifbc {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense row-major complex matrix. Sizes here are tiny (K, M <= ~8), so
/// everything is stored by value and copied freely.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const cplx> d);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

  /// Row i as a 1 x cols matrix.
  [[nodiscard]] CMatrix row(std::size_t i) const;
  /// Column j as a rows x 1 matrix.
  [[nodiscard]] CMatrix col(std::size_t j) const;
  [[nodiscard]] std::vector<cplx> row_vector(std::size_t i) const;
  [[nodiscard]] std::vector<cplx> col_vector(std::size_t j) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix m);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

CMatrix hermitian(const CMatrix& m);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// LU with partial pivoting. Throws SingularMatrixError when a pivot falls
/// below 1e-12 times the largest entry magnitude.
CMatrix inverse(const CMatrix& m);
cplx det(const CMatrix& m);

cplx trace(const CMatrix& m);
double frob_norm_sq(const CMatrix& m);
double frob_norm(const CMatrix& m);
/// m * m^H
CMatrix gram(const CMatrix& m);

/// Row-wise LQ factorization m = L * Q (L lower triangular with real
/// nonnegative diagonal, Q with orthonormal rows), for full row rank m.
struct LQFactors {
  CMatrix l;
  CMatrix q;
};
LQFactors lq_decompose(const CMatrix& m);

// Row-vector helpers (vectors are rows, matching the usual h_i notation).
double norm_sq(std::span<const cplx> v);
/// x * y^H = sum_k x_k conj(y_k)
cplx inner(std::span<const cplx> x, std::span<const cplx> y);

}  // namespace ifbc
