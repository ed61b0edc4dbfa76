#include "pedcon/arith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace pedcon::arith {

bool ResidueClassSet::contains(std::int64_t r) const {
  return std::binary_search(members.begin(), members.end(), r);
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::abs(a) / gcd(a, b), std::abs(b));
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient below 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::int64_t p) {
  if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError("legendre: modulus " + std::to_string(p) + " is not an odd prime");
  }
  const auto r = static_cast<std::uint64_t>(floor_mod(a, p));
  if (r == 0) return 0;
  return powmod(r, static_cast<std::uint64_t>(p - 1) / 2, static_cast<std::uint64_t>(p)) == 1 ? 1 : -1;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw PreconditionError("divisors: n must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw PreconditionError("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(std::int64_t n) {
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

ResidueClassSet squares_mod(std::int64_t m) {
  if (m < 1) throw PreconditionError("squares_mod: m must be positive");
  ResidueClassSet out{m, {}};
  if (m == 1) {
    out.members = {0};
    return out;
  }
  std::set<std::int64_t> seen;
  for (std::int64_t u = 1; u < m; ++u) {
    if (gcd(u, m) != 1) continue;
    seen.insert(static_cast<std::int64_t>(mulmod(u, u, m)));
  }
  out.members.assign(seen.begin(), seen.end());
  return out;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw PreconditionError("valuation of 0 is undefined");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError("valuation: " + std::to_string(p) + " is not prime");
  }
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Integer& n, std::int64_t p) {
  if (n == 0) throw PreconditionError("valuation of 0 is undefined");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError("valuation: " + std::to_string(p) + " is not prime");
  }
  Integer x = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

std::int64_t gamma0_index(std::int64_t N) {
  std::int64_t index = N;
  for (const auto& [p, e] : factorize(N)) index = index / p * (p + 1);
  return index;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw BudgetError("integer overflow in index arithmetic");
  return out;
}

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace pedcon::arith
