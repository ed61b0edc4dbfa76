#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "pedcon/types.hpp"

namespace pedcon {

/// Truncated power series sum_{n <= order} c(n) q^n over Z or Z/mZ.
///
/// Coefficients are stored densely, one slot per exponent 0..order. In
/// exact mode they are GMP integers; modulo m <= 255 they are packed one
/// byte each, and for larger m one machine word each. Residues always lie
/// in [0, m). Values are immutable once constructed.
///
/// Every binary operation truncates to the smaller operand order: a
/// coefficient that was never computed is never fabricated as zero.
class Series {
 public:
  using Exact = std::vector<Integer>;
  using Bytes = std::vector<std::uint8_t>;
  using Words = std::vector<std::uint64_t>;
  using Storage = std::variant<Exact, Bytes, Words>;

  static constexpr std::uint64_t kByteModulusLimit = 255;
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  // The zero series of order 0 over Z.
  Series();

  // The zero series of the given order.
  Series(std::size_t order, Modulus modulus);

  // Takes ownership of a coefficient vector; its length fixes the order.
  // Throws PreconditionError if the storage kind does not match the
  // modulus or a residue lies outside [0, m).
  Series(Storage coeffs, Modulus modulus);

  static Series from_coefficients(std::span<const Integer> coeffs, Modulus modulus = {});
  static Series from_coefficients(std::initializer_list<long> coeffs, Modulus modulus = {});
  static Series from_sparse(std::size_t order, Modulus modulus,
                            std::span<const std::pair<std::size_t, std::int64_t>> terms);
  static Series constant(const Integer& c, std::size_t order, Modulus modulus = {});
  static Series one(std::size_t order, Modulus modulus = {}) { return constant(1, order, modulus); }

  std::size_t order() const noexcept { return order_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  bool is_exact() const noexcept { return !modulus_.has_value(); }
  const Storage& storage() const noexcept { return coeffs_; }

  // Coefficient of q^n. Negative n reads as 0; n > order throws
  // std::out_of_range.
  Integer coeff(std::int64_t n) const;

  // Coefficient at a rational index: 0 unless the index is a nonnegative
  // integer.
  Integer coeff_at(const Rational& index) const;

  // Residue at n; modular series only.
  std::uint64_t residue(std::size_t n) const;

  bool is_zero_at(std::size_t n) const;
  bool is_zero() const;
  std::size_t nonzero_count() const;
  std::vector<std::size_t> support() const;
  std::vector<Integer> coefficients() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  std::size_t order_ = 0;
  Modulus modulus_;
  Storage coeffs_;
};

// Ring and module operations. All binary operations require the same
// modulus (ModulusMismatch otherwise) and return order min(a, b).
Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series neg(const Series& a);
Series scale(const Series& a, const Integer& c);
Series mul(const Series& a, const Series& b);

/// Quotient num / den. The constant term of den must be +-1 in exact mode
/// or a unit modulo m; cost is O(order * nonzeros(den)).
Series div(const Series& num, const Series& den);
Series inv(const Series& a);

/// Binary powering; negative exponents go through inv.
Series pow(const Series& a, std::int64_t e);

/// Coefficientwise reduction into [0, m). The source must be exact or have
/// a modulus that m divides.
Series reduce_mod(const Series& a, std::uint64_t m);

/// Coefficients a(m n + t) for n = 0..floor((order - t) / m).
Series extract_progression(const Series& a, std::int64_t m, std::int64_t t);

Series truncate(const Series& a, std::size_t order);

/// a(q^factor), truncated at `order`.
Series inflate(const Series& a, std::size_t factor, std::size_t order);

/// q^by * a, truncated at `order`.
Series shift(const Series& a, std::size_t by, std::size_t order);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return neg(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

}  // namespace pedcon
