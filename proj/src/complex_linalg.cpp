#include "ifbc/complex_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ifbc {

namespace {

constexpr double kSingularRel = 1e-12;

void require_finite(const CMatrix& m) {
  for (const auto& z : m.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("matrix contains non-finite entries");
    }
  }
}

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (const auto& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

// LU with partial pivoting on a copy; min_pivot is the smallest pivot magnitude seen.
struct LU {
  CMatrix lu;
  std::vector<std::size_t> perm;
  int parity = 1;
  double min_pivot = 0.0;
};

LU lu_decompose(const CMatrix& m) {
  const std::size_t n = m.rows();
  LU out{m, std::vector<std::size_t>(n), 1, 0.0};
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  out.min_pivot = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  auto& a = out.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    out.min_pivot = std::min(out.min_pivot, best);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(out.perm[k], out.perm[p]);
      out.parity = -out.parity;
    }
    if (best == 0.0) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return out;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::row(std::size_t i) const {
  CMatrix r(1, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::col(std::size_t j) const {
  CMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

std::vector<cplx> CMatrix::row_vector(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<cplx> CMatrix::col_vector(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix m) { return m *= s; }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix hermitian(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix inverse(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse: matrix is not square");
  require_finite(m);
  const std::size_t n = m.rows();
  const double scale = max_abs(m);
  if (n == 0) return m;
  if (scale == 0.0) throw SingularMatrixError("inverse: zero matrix");

  if (n == 2) {
    const cplx d = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    // Same pivot rule as LU: the second pivot magnitude is |det| / |first pivot|.
    const double p1 = std::max(std::abs(m(0, 0)), std::abs(m(1, 0)));
    if (std::abs(d) / p1 < kSingularRel * scale) throw SingularMatrixError("inverse: singular 2x2 matrix");
    return CMatrix{{m(1, 1) / d, -m(0, 1) / d}, {-m(1, 0) / d, m(0, 0) / d}};
  }

  const LU f = lu_decompose(m);
  if (f.min_pivot < kSingularRel * scale) throw SingularMatrixError("inverse: pivot below singularity threshold");

  CMatrix inv(n, n);
  std::vector<cplx> x(n);
  for (std::size_t col = 0; col < n; ++col) {
    // Solve L U x = P e_col.
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = f.perm[i] == col ? cplx{1.0} : cplx{0.0};
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = x[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
      x[ii] = s / f.lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

cplx det(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const LU f = lu_decompose(m);
  cplx d = static_cast<double>(f.parity);
  for (std::size_t i = 0; i < n; ++i) d *= f.lu(i, i);
  return d;
}

cplx trace(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double frob_norm_sq(const CMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return s;
}

double frob_norm(const CMatrix& m) { return std::sqrt(frob_norm_sq(m)); }

CMatrix gram(const CMatrix& m) { return matmul(m, hermitian(m)); }

LQFactors lq_decompose(const CMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t n = m.cols();
  if (k > n) throw DimensionError("lq_decompose: more rows than columns");
  CMatrix l(k, k);
  CMatrix q(k, n);
  const double scale = std::max(max_abs(m), 1e-300);
  // Modified Gram-Schmidt over rows, with one reorthogonalization pass.
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<cplx> v = m.row_vector(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto qj = q.row_vector(j);
        const cplx c = inner(v, qj);
        l(i, j) += c;
        for (std::size_t t = 0; t < n; ++t) v[t] -= c * qj[t];
      }
    }
    const double r = std::sqrt(norm_sq(v));
    if (r < kSingularRel * scale) throw SingularMatrixError("lq_decompose: rows are linearly dependent");
    l(i, i) = r;
    for (std::size_t t = 0; t < n; ++t) q(i, t) = v[t] / r;
  }
  return {l, q};
}

double norm_sq(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionError("inner: length mismatch");
  cplx s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * std::conj(y[k]);
  return s;
}

}  // namespace ifbc
