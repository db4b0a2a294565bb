#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ifbc/gaussian_integers.hpp"

namespace ifbc {

class NotInvertibleModP : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Z_p[j] for a prime p = 3 (mod 4); such p makes it the field with p^2 elements.
class ModPField {
 public:
  explicit ModPField(std::int64_t p);
  [[nodiscard]] std::int64_t p() const noexcept { return p_; }

  [[nodiscard]] GaussInt reduce(GaussInt x) const;
  [[nodiscard]] GaussInt add(GaussInt x, GaussInt y) const;
  [[nodiscard]] GaussInt sub(GaussInt x, GaussInt y) const;
  [[nodiscard]] GaussInt mul(GaussInt x, GaussInt y) const;
  /// x^(p^2 - 2); throws NotInvertibleModP for x = 0.
  [[nodiscard]] GaussInt inv(GaussInt x) const;

  friend bool operator==(const ModPField&, const ModPField&) = default;

 private:
  std::int64_t p_;
};

/// Matrix over Z_p[j] with entries kept reduced to {0..p-1} + j{0..p-1}.
/// Rows of a message matrix are the per-user messages.
class MessageMatrix {
 public:
  MessageMatrix(ModPField field, std::size_t rows, std::size_t cols);
  /// Reduces every entry of `entries` (row-major) mod p.
  MessageMatrix(ModPField field, std::size_t rows, std::size_t cols, const std::vector<GaussInt>& entries);

  [[nodiscard]] const ModPField& field() const noexcept { return field_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] GaussInt operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, GaussInt v) { data_[i * cols_ + j] = field_.reduce(v); }
  [[nodiscard]] std::vector<GaussInt> row(std::size_t i) const;

  friend bool operator==(const MessageMatrix&, const MessageMatrix&) = default;

 private:
  ModPField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GaussInt> data_;
};

MessageMatrix operator+(const MessageMatrix& a, const MessageMatrix& b);

/// det(A) mod p != 0.
bool modp_invertible(const IntegerCoeffMatrix& a, const ModPField& field);
/// The matrix A~ with A A~ = I (mod p). Gauss-Jordan over Z_p[j].
MessageMatrix modp_inverse(const IntegerCoeffMatrix& a, const ModPField& field);
/// W' = A~ W (mod p).
MessageMatrix precode_messages(const MessageMatrix& w, const IntegerCoeffMatrix& a);
/// a_i W' (mod p); equals w_i when W' came from precode_messages with the same A.
std::vector<GaussInt> recover_message(std::size_t user, const MessageMatrix& w_prime, const IntegerCoeffMatrix& a);

}  // namespace ifbc
