#include "ifbc/gaussian_integers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ifbc {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Gaussian integer overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("Gaussian integer overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Gaussian integer overflow");
  return r;
}

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

GaussInt gi_add(GaussInt x, GaussInt y) { return {checked_add(x.re, y.re), checked_add(x.im, y.im)}; }
GaussInt gi_sub(GaussInt x, GaussInt y) { return {checked_sub(x.re, y.re), checked_sub(x.im, y.im)}; }

GaussInt gi_mul(GaussInt x, GaussInt y) {
  return {checked_sub(checked_mul(x.re, y.re), checked_mul(x.im, y.im)),
          checked_add(checked_mul(x.re, y.im), checked_mul(x.im, y.re))};
}

GaussInt gi_conj(GaussInt x) { return {x.re, checked_sub(0, x.im)}; }
GaussInt gi_neg(GaussInt x) { return {checked_sub(0, x.re), checked_sub(0, x.im)}; }

std::int64_t gi_norm_sq(GaussInt x) { return checked_add(checked_mul(x.re, x.re), checked_mul(x.im, x.im)); }

GaussInt gi_div_exact(GaussInt x, GaussInt y) {
  const std::int64_t n = gi_norm_sq(y);
  if (n == 0) throw std::domain_error("Gaussian integer division by zero");
  const GaussInt num = gi_mul(x, gi_conj(y));
  if (num.re % n != 0 || num.im % n != 0) throw std::domain_error("Gaussian integer division is not exact");
  return {num.re / n, num.im / n};
}

GaussInt gi_round(cplx z) {
  constexpr double lim = 9.0e15;
  if (!(std::abs(z.real()) < lim && std::abs(z.imag()) < lim)) {
    throw std::overflow_error("gi_round: value out of integer range");
  }
  return {std::llround(z.real()), std::llround(z.imag())};
}

bool gi_is_unit(GaussInt x) { return gi_norm_sq(x) == 1; }

std::ostream& operator<<(std::ostream& os, GaussInt x) {
  if (x.im == 0) return os << x.re;
  if (x.re == 0) return os << x.im << "j";
  return os << x.re << (x.im < 0 ? "-" : "+") << (x.im < 0 ? -x.im : x.im) << "j";
}

bool in_norm_set(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("in_norm_set: negative argument " + std::to_string(n));
  for (std::int64_t a = 0; a * a <= n; ++a) {
    const std::int64_t rest = n - a * a;
    const std::int64_t b = isqrt(rest);
    if (b * b == rest) return true;
  }
  return false;
}

NormSetValue::NormSetValue(std::int64_t n) : n_(n) {
  if (!in_norm_set(n)) throw std::invalid_argument(std::to_string(n) + " is not a sum of two squares");
}

NormSetValue floor_norm_set(double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("floor_norm_set: argument must be nonnegative");
  if (x > 1e15) throw std::overflow_error("floor_norm_set: argument too large");
  auto n = static_cast<std::int64_t>(std::floor(x));
  while (!in_norm_set(n)) --n;  // terminates at 0
  return NormSetValue(n);
}

NormSetValue ceil_norm_set(double x) {
  if (!(x <= 1e15)) throw std::overflow_error("ceil_norm_set: argument too large");
  auto n = x <= 0.0 ? std::int64_t{0} : static_cast<std::int64_t>(std::ceil(x));
  while (!in_norm_set(n)) ++n;
  return NormSetValue(n);
}

GaussInt two_square_decomp(NormSetValue nv) {
  const std::int64_t n = nv.value();
  // Scan a downward from sqrt(n); the first hit has the largest a, hence a >= b.
  for (std::int64_t a = isqrt(n); a >= 0; --a) {
    const std::int64_t rest = n - a * a;
    const std::int64_t b = isqrt(rest);
    if (b * b == rest && b <= a) return {a, b};
  }
  throw std::logic_error("two_square_decomp: no decomposition for a norm-set member");
}

IntegerCoeffMatrix::IntegerCoeffMatrix(std::size_t n) : n_(n), data_(n * n) {}

IntegerCoeffMatrix::IntegerCoeffMatrix(std::initializer_list<std::initializer_list<GaussInt>> rows) {
  n_ = rows.size();
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw DimensionError("IntegerCoeffMatrix must be square");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntegerCoeffMatrix IntegerCoeffMatrix::identity(std::size_t n) {
  IntegerCoeffMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = GaussInt{1, 0};
  return a;
}

std::vector<GaussInt> IntegerCoeffMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * n_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_)};
}

std::vector<GaussInt> IntegerCoeffMatrix::col(std::size_t j) const {
  std::vector<GaussInt> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

CMatrix IntegerCoeffMatrix::to_cmatrix() const {
  CMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).to_complex();
  return m;
}

GaussInt IntegerCoeffMatrix::det() const {
  if (n_ == 0) return {1, 0};
  std::vector<GaussInt> m = data_;
  auto at = [&](std::size_t i, std::size_t j) -> GaussInt& { return m[i * n_ + j]; };
  bool negate = false;
  GaussInt prev{1, 0};
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n_ && at(p, k).is_zero()) ++p;
      if (p == n_) return {0, 0};
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) {
        at(i, j) = gi_div_exact(at(i, j) * at(k, k) - at(i, k) * at(k, j), prev);
      }
    }
    prev = at(k, k);
  }
  const GaussInt d = at(n_ - 1, n_ - 1);
  return negate ? -d : d;
}

std::ostream& operator<<(std::ostream& os, const IntegerCoeffMatrix& a) {
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < a.size(); ++j) os << (j ? ", " : "") << a(i, j);
  }
  return os << "]";
}

std::int64_t gi_vec_norm_sq(const std::vector<GaussInt>& v) {
  std::int64_t s = 0;
  for (const auto& x : v) s = checked_add(s, gi_norm_sq(x));
  return s;
}

GaussInt gi_vec_inner(const std::vector<GaussInt>& x, const std::vector<GaussInt>& y) {
  if (x.size() != y.size()) throw DimensionError("gi_vec_inner: length mismatch");
  GaussInt s{0, 0};
  for (std::size_t k = 0; k < x.size(); ++k) s = s + x[k] * gi_conj(y[k]);
  return s;
}

}  // namespace ifbc
