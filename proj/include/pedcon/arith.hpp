#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pedcon/types.hpp"

// Elementary number theory on 64-bit integers.
namespace pedcon::arith {

/// A sorted, duplicate-free set of residues modulo `modulus`.
struct ResidueClassSet {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> members;

  bool contains(std::int64_t r) const;
  std::size_t size() const { return members.size(); }
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

// Least nonnegative residue of a modulo m (m > 0).
std::int64_t floor_mod(std::int64_t a, std::int64_t m);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
/// Throws PreconditionError when p is even or composite; there is no
/// Jacobi fallback.
int legendre(std::int64_t a, std::int64_t p);

/// All positive divisors of n in ascending order. n >= 1.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_squarefree(std::int64_t n);

/// {u^2 mod m : gcd(u, m) = 1}. squares_mod(1) is {0}.
ResidueClassSet squares_mod(std::int64_t m);

/// Exponent of the prime p in n. Throws PreconditionError for n == 0.
int valuation(std::int64_t n, std::int64_t p);
int valuation(const Integer& n, std::int64_t p);

/// [SL2(Z) : Gamma0(N)] = N * prod_{p | N} (1 + 1/p).
std::int64_t gamma0_index(std::int64_t N);

// a * b, throwing BudgetError on signed 64-bit overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, unsigned exp);

}  // namespace pedcon::arith
