#include "ifbc/message_precoding.hpp"

#include <string>

namespace ifbc {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod(std::int64_t x, std::int64_t p) {
  const std::int64_t r = x % p;
  return r < 0 ? r + p : r;
}

// Gauss-Jordan on [A | I]; returns false if A is singular over the field.
bool gauss_jordan(const IntegerCoeffMatrix& a, const ModPField& f, MessageMatrix* inverse_out) {
  const std::size_t n = a.size();
  std::vector<std::vector<GaussInt>> aug(n, std::vector<GaussInt>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = f.reduce(a(i, j));
    aug[i][n + i] = GaussInt{1, 0};
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && aug[p][k].is_zero()) ++p;
    if (p == n) return false;
    std::swap(aug[k], aug[p]);
    const GaussInt piv_inv = f.inv(aug[k][k]);
    for (auto& x : aug[k]) x = f.mul(x, piv_inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || aug[i][k].is_zero()) continue;
      const GaussInt factor = aug[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] = f.sub(aug[i][j], f.mul(factor, aug[k][j]));
    }
  }
  if (inverse_out != nullptr) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inverse_out->set(i, j, aug[i][n + j]);
  }
  return true;
}

}  // namespace

ModPField::ModPField(std::int64_t p) : p_(p) {
  if (!is_prime(p) || p % 4 != 3) {
    throw std::invalid_argument("modulus " + std::to_string(p) + " must be a prime congruent to 3 mod 4");
  }
  if (p > 3037000499LL) throw std::invalid_argument("modulus too large for 64-bit field arithmetic");
}

GaussInt ModPField::reduce(GaussInt x) const { return {mod(x.re, p_), mod(x.im, p_)}; }

GaussInt ModPField::add(GaussInt x, GaussInt y) const { return reduce({x.re + y.re, x.im + y.im}); }

GaussInt ModPField::sub(GaussInt x, GaussInt y) const { return reduce({x.re - y.re, x.im - y.im}); }

GaussInt ModPField::mul(GaussInt x, GaussInt y) const {
  x = reduce(x);
  y = reduce(y);
  const std::int64_t re = mod(mod(x.re * y.re, p_) - mod(x.im * y.im, p_), p_);
  const std::int64_t im = mod(x.re * y.im + x.im * y.re, p_);
  return {re, im};
}

GaussInt ModPField::inv(GaussInt x) const {
  x = reduce(x);
  if (x.is_zero()) throw NotInvertibleModP("zero has no inverse in Z_p[j]");
  std::int64_t e = p_ * p_ - 2;
  GaussInt result{1, 0};
  GaussInt base = x;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

MessageMatrix::MessageMatrix(ModPField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

MessageMatrix::MessageMatrix(ModPField field, std::size_t rows, std::size_t cols,
                             const std::vector<GaussInt>& entries)
    : MessageMatrix(field, rows, cols) {
  if (entries.size() != rows * cols) throw DimensionError("MessageMatrix: entry count mismatch");
  for (std::size_t k = 0; k < entries.size(); ++k) data_[k] = field_.reduce(entries[k]);
}

std::vector<GaussInt> MessageMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

MessageMatrix operator+(const MessageMatrix& a, const MessageMatrix& b) {
  if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("MessageMatrix sum: field or shape mismatch");
  }
  MessageMatrix out(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set(i, j, a.field().add(a(i, j), b(i, j)));
  return out;
}

bool modp_invertible(const IntegerCoeffMatrix& a, const ModPField& field) {
  return gauss_jordan(a, field, nullptr);
}

MessageMatrix modp_inverse(const IntegerCoeffMatrix& a, const ModPField& field) {
  MessageMatrix inv(field, a.size(), a.size());
  if (!gauss_jordan(a, field, &inv)) {
    throw NotInvertibleModP("integer matrix is singular modulo " + std::to_string(field.p()));
  }
  return inv;
}

MessageMatrix precode_messages(const MessageMatrix& w, const IntegerCoeffMatrix& a) {
  if (w.rows() != a.size()) throw DimensionError("precode_messages: message count must equal size of A");
  const ModPField& f = w.field();
  const MessageMatrix a_tilde = modp_inverse(a, f);
  MessageMatrix out(f, w.rows(), w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      GaussInt s{0, 0};
      for (std::size_t k = 0; k < w.rows(); ++k) s = f.add(s, f.mul(a_tilde(i, k), w(k, j)));
      out.set(i, j, s);
    }
  }
  return out;
}

std::vector<GaussInt> recover_message(std::size_t user, const MessageMatrix& w_prime, const IntegerCoeffMatrix& a) {
  if (w_prime.rows() != a.size()) throw DimensionError("recover_message: message count must equal size of A");
  if (user >= a.size()) throw std::out_of_range("recover_message: user index out of range");
  const ModPField& f = w_prime.field();
  if (!modp_invertible(a, f)) {
    throw NotInvertibleModP("integer matrix is singular modulo " + std::to_string(f.p()));
  }
  std::vector<GaussInt> out(w_prime.cols());
  for (std::size_t j = 0; j < w_prime.cols(); ++j) {
    GaussInt s{0, 0};
    for (std::size_t k = 0; k < a.size(); ++k) s = f.add(s, f.mul(a(user, k), w_prime(k, j)));
    out[j] = s;
  }
  return out;
}

}  // namespace ifbc
