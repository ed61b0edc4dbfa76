#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pedcon/arith.hpp"

using namespace pedcon;
using namespace pedcon::arith;

namespace {

// Quadratic residues by squaring every residue, the table the Euler
// criterion must agree with.
std::set<std::int64_t> square_table(std::int64_t p) {
  std::set<std::int64_t> out;
  for (std::int64_t x = 1; x < p; ++x) out.insert(x * x % p);
  return out;
}

bool slow_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre(5, 5), 0);
  EXPECT_EQ(legendre(1, 7), 1);
  EXPECT_EQ(legendre(-2, 5), -1);
  EXPECT_EQ(legendre(-2, 19), 1);
  EXPECT_EQ(legendre(-2, 7), -1);
}

TEST(Legendre, RejectsEvenOrCompositeModulus) {
  EXPECT_THROW(legendre(3, 2), PreconditionError);
  EXPECT_THROW(legendre(3, 9), PreconditionError);
  EXPECT_THROW(legendre(3, 15), PreconditionError);
}

TEST(Legendre, MatchesSquareTable) {
  for (std::int64_t p = 3; p <= 50; ++p) {
    if (!slow_prime(p)) continue;
    const auto sq = square_table(p);
    for (std::int64_t a = 0; a < p; ++a) {
      const int want = a == 0 ? 0 : (sq.count(a) ? 1 : -1);
      EXPECT_EQ(legendre(a, p), want) << "a=" << a << " p=" << p;
    }
  }
}

TEST(Legendre, Multiplicative) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::int64_t> dist(-100000, 100000);
  for (std::int64_t p = 3; p <= 100; ++p) {
    if (!slow_prime(p)) continue;
    for (int i = 0; i < 50; ++i) {
      const auto a = dist(rng), b = dist(rng);
      EXPECT_EQ(legendre(a * b, p), legendre(a, p) * legendre(b, p));
    }
  }
}

TEST(Divisors, Examples) {
  EXPECT_EQ(divisors(12), (std::vector<std::int64_t>{1, 2, 3, 4, 6, 12}));
  EXPECT_EQ(divisors(1), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(divisors(2304).size(), 27u);
  EXPECT_EQ(divisors(60).size(), 12u);
}

TEST(Divisors, AgreeWithTrialDivision) {
  for (std::int64_t n = 1; n <= 500; ++n) {
    std::vector<std::int64_t> want;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) want.push_back(d);
    EXPECT_EQ(divisors(n), want);
  }
}

TEST(SquaresMod, Examples) {
  EXPECT_EQ(squares_mod(24).members, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(squares_mod(5).members, (std::vector<std::int64_t>{1, 4}));
  EXPECT_EQ(squares_mod(2).members, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(squares_mod(1).members, (std::vector<std::int64_t>{0}));
}

TEST(SquaresMod, SortedUnitSquares) {
  for (std::int64_t m = 2; m <= 300; ++m) {
    std::set<std::int64_t> want;
    for (std::int64_t u = 1; u < m; ++u)
      if (std::gcd(u, m) == 1) want.insert(u * u % m);
    const auto got = squares_mod(m);
    EXPECT_EQ(got.modulus, m);
    EXPECT_EQ(got.members, std::vector<std::int64_t>(want.begin(), want.end()));
  }
}

// Every unit modulo 24m squares to 1 modulo 24.
TEST(SquaresMod, UnitSquaresAreOneMod24) {
  for (std::int64_t m : {1, 5, 7, 25, 49}) {
    for (std::int64_t s : squares_mod(24 * m).members) EXPECT_EQ(s % 24, 1);
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(2304, 2), 8);
  EXPECT_EQ(valuation(2304, 3), 2);
  EXPECT_EQ(valuation(-40, 2), 3);
  EXPECT_EQ(valuation(Integer("340282366920938463463374607431768211456"), 2), 128);
  EXPECT_THROW(valuation(0, 2), PreconditionError);
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(25 * 25 - 1, 24), 24);
  EXPECT_EQ(gcd(0, 7), 7);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(lcm(4, 6), 12);
}

TEST(IsPrime, SmallRangeAgainstTrialDivision) {
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), slow_prime(n)) << n;
  EXPECT_TRUE(is_prime(19));
}

TEST(IsPrime, LargeValues) {
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(18446744073709551557ULL - 2));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_TRUE(is_prime(1000000007ULL));
}

TEST(ModArith, AgainstGmp) {
  const std::uint64_t m = 1000000007ULL;
  Integer want;
  mpz_powm_ui(want.get_mpz_t(), Integer(3).get_mpz_t(), 200, Integer(static_cast<unsigned long>(m)).get_mpz_t());
  EXPECT_EQ(powmod(3, 200, m), want.get_ui());
  const Integer big("18446744073709551615");
  EXPECT_EQ(mulmod(~0ULL, ~0ULL, m), Integer(big * big % static_cast<unsigned long>(m)).get_ui());
  EXPECT_EQ(*inverse_mod(3, 7), 5u);
  EXPECT_FALSE(inverse_mod(4, 8).has_value());
  EXPECT_EQ(floor_mod(-1, 24), 23);
}

TEST(Gamma0Index, Examples) {
  EXPECT_EQ(gamma0_index(60), 144);
  EXPECT_EQ(gamma0_index(1), 1);
  EXPECT_EQ(gamma0_index(2304), 2304 * 3 / 2 * 4 / 3);
}

TEST(Factorize, RoundTrip) {
  for (std::int64_t n = 1; n <= 2000; ++n) {
    std::int64_t prod = 1;
    for (auto [p, e] : factorize(n)) {
      EXPECT_TRUE(slow_prime(p));
      for (int i = 0; i < e; ++i) prod *= p;
    }
    EXPECT_EQ(prod, n);
  }
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(60));
}

TEST(CheckedMul, Overflow) {
  EXPECT_EQ(checked_mul(1 << 20, 1 << 20), std::int64_t{1} << 40);
  EXPECT_THROW(checked_mul(std::int64_t{1} << 40, std::int64_t{1} << 40), BudgetError);
  EXPECT_THROW(checked_pow(10, 30), BudgetError);
}
