#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace pedcon {

using Integer = mpz_class;
using Rational = mpq_class;

// Absent modulus means exact integer coefficients.
using Modulus = std::optional<std::uint64_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold for the inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The request exceeds a configured size or time budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Binary series operation on operands over different coefficient rings.
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

// num / den in lowest terms. The two-argument mpq_class constructor does
// not reduce, and GMP's rational arithmetic expects reduced operands.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

inline std::string to_string(const Rational& v) { return v.get_str(); }

inline std::string modulus_string(const Modulus& m) {
  return m ? std::to_string(*m) : std::string("none");
}

}  // namespace pedcon
