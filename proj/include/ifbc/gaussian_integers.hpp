#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "ifbc/complex_linalg.hpp"

namespace ifbc {

/// Element of Z[j]. Arithmetic is exact; overflow throws std::overflow_error.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussInt() = default;
  constexpr GaussInt(std::int64_t r, std::int64_t i = 0) : re(r), im(i) {}

  [[nodiscard]] cplx to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
  [[nodiscard]] bool is_zero() const { return re == 0 && im == 0; }

  friend constexpr bool operator==(const GaussInt&, const GaussInt&) = default;
  friend constexpr auto operator<=>(const GaussInt&, const GaussInt&) = default;
};

GaussInt gi_add(GaussInt x, GaussInt y);
GaussInt gi_sub(GaussInt x, GaussInt y);
GaussInt gi_mul(GaussInt x, GaussInt y);
GaussInt gi_conj(GaussInt x);
GaussInt gi_neg(GaussInt x);
std::int64_t gi_norm_sq(GaussInt x);
/// Exact division; throws std::domain_error if y does not divide x.
GaussInt gi_div_exact(GaussInt x, GaussInt y);
/// Nearest Gaussian integer (componentwise rounding, halves away from zero).
GaussInt gi_round(cplx z);
/// True for the four units 1, -1, j, -j.
bool gi_is_unit(GaussInt x);

inline GaussInt operator+(GaussInt x, GaussInt y) { return gi_add(x, y); }
inline GaussInt operator-(GaussInt x, GaussInt y) { return gi_sub(x, y); }
inline GaussInt operator*(GaussInt x, GaussInt y) { return gi_mul(x, y); }
inline GaussInt operator-(GaussInt x) { return gi_neg(x); }

std::ostream& operator<<(std::ostream& os, GaussInt x);

/// Integer that is a sum of two squares.
class NormSetValue {
 public:
  /// Throws std::invalid_argument if n is negative or not a sum of two squares.
  explicit NormSetValue(std::int64_t n);
  [[nodiscard]] std::int64_t value() const noexcept { return n_; }
  friend auto operator<=>(const NormSetValue&, const NormSetValue&) = default;

 private:
  std::int64_t n_;
};

bool in_norm_set(std::int64_t n);
/// Largest sum of two squares <= x (x >= 0).
NormSetValue floor_norm_set(double x);
/// Smallest sum of two squares >= x.
NormSetValue ceil_norm_set(double x);
/// Canonical a + bj with a >= b >= 0 and a^2 + b^2 = n.
GaussInt two_square_decomp(NormSetValue n);

/// Square matrix over Z[j]. Rows are the coefficient vectors a_i.
class IntegerCoeffMatrix {
 public:
  IntegerCoeffMatrix() = default;
  explicit IntegerCoeffMatrix(std::size_t n);
  IntegerCoeffMatrix(std::initializer_list<std::initializer_list<GaussInt>> rows);

  static IntegerCoeffMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  GaussInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const GaussInt& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  [[nodiscard]] std::vector<GaussInt> row(std::size_t i) const;
  [[nodiscard]] std::vector<GaussInt> col(std::size_t j) const;
  [[nodiscard]] CMatrix to_cmatrix() const;
  /// Exact determinant (fraction-free Bareiss elimination over Z[j]).
  [[nodiscard]] GaussInt det() const;
  [[nodiscard]] bool full_rank() const { return !det().is_zero(); }
  [[nodiscard]] bool unimodular() const { return gi_is_unit(det()); }

  friend bool operator==(const IntegerCoeffMatrix&, const IntegerCoeffMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<GaussInt> data_;
};

std::ostream& operator<<(std::ostream& os, const IntegerCoeffMatrix& a);

/// Squared norm of an integer row, as an exact integer.
std::int64_t gi_vec_norm_sq(const std::vector<GaussInt>& v);
/// x * y^H over Z[j].
GaussInt gi_vec_inner(const std::vector<GaussInt>& x, const std::vector<GaussInt>& y);

}  // namespace ifbc
