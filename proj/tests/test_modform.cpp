#include <gtest/gtest.h>

#include <random>

#include "pedcon/arith.hpp"
#include "pedcon/eta.hpp"
#include "pedcon/modform.hpp"
#include "pedcon/partitions.hpp"

using namespace pedcon;
using namespace pedcon::modform;

namespace {

std::int64_t g(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// Order at c/d written out for the four-term quotients used here.
Rational order_at(const ExponentMap& e, std::int64_t N, std::int64_t d) {
  Rational sum = 0;
  for (const auto& [delta, r] : e) {
    Rational term(Integer(g(d, delta) * g(d, delta) * r), Integer(delta));
    term.canonicalize();
    sum += term;
  }
  Rational out = sum * N;
  out /= Integer(24 * g(d, N / d) * d);
  out.canonicalize();
  return out;
}

// Squarefree part of (-1)^l prod delta^r, from the prime exponents.
Integer squarefree_disc(const ExponentMap& e) {
  std::int64_t l2 = 0;
  std::map<std::int64_t, std::int64_t> ex;
  for (const auto& [delta, r] : e) {
    l2 += r;
    std::int64_t x = delta;
    for (std::int64_t p = 2; x > 1; ++p) {
      while (x % p == 0) {
        ex[p] += r;
        x /= p;
      }
    }
  }
  Integer D = (l2 / 2) % 2 == 0 ? 1 : -1;
  for (auto [p, n] : ex)
    if (n % 2 != 0) D *= p;
  return D;
}

int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::vector<Integer> dense(const Series& s) { return s.coefficients(); }

// b(n) = a(pn) + chi p^{l-1} a(n/p), reduced mod m unless m is 0.
std::vector<Integer> reference_hecke(const std::vector<Integer>& a, std::int64_t p, std::int64_t l, int chi,
                                     unsigned long m) {
  const std::size_t top = (a.size() - 1) / p;
  std::vector<Integer> b(top + 1);
  Integer pw = 1;
  for (std::int64_t i = 0; i < l - 1; ++i) pw *= p;
  for (std::size_t n = 0; n <= top; ++n) {
    b[n] = a[n * p];
    if (n % p == 0) b[n] += chi * pw * a[n / p];
    if (m == 0) continue;
    b[n] %= m;
    if (b[n] < 0) b[n] += m;
  }
  return b;
}

}  // namespace

TEST(Certify, DeltaTwentyFour) {
  const auto c = certify({1, {{1, 24}}});
  EXPECT_EQ(c.weight, 12);
  EXPECT_TRUE(c.cond_24_delta);
  EXPECT_TRUE(c.cond_24_N_over_delta);
  EXPECT_EQ(c.cusp_orders.at(1), 1);
  EXPECT_TRUE(c.holomorphic);
  EXPECT_EQ(c.character_discriminant, 1);
}

TEST(Certify, BTwoThree) {
  const auto bq = b_quotient(2, 3);
  EXPECT_EQ(bq.level, 2304);
  EXPECT_EQ(bq.exponents, (ExponentMap{{24, 5}, {48, -4}, {72, 6}, {96, 1}}));
  const auto c = certify(bq);
  EXPECT_EQ(c.weight, 4);
  EXPECT_TRUE(c.holomorphic);
  EXPECT_TRUE(c.cond_24_delta && c.cond_24_N_over_delta);
  EXPECT_EQ(c.cusp_orders.size(), 27u);
  EXPECT_EQ(c.cusp_orders.at(16), 0);
  EXPECT_EQ(c.cusp_orders.at(48), 0);
}

TEST(Certify, BThreeThree) {
  const auto bq = b_quotient(3, 3);
  EXPECT_EQ(bq.exponents, (ExponentMap{{24, 70}, {48, 4}, {72, -21}, {96, 1}}));
  const auto c = certify(bq);
  EXPECT_EQ(c.weight, 27);
  EXPECT_TRUE(c.holomorphic);
}

TEST(Certify, FamiliesHolomorphicForSmallK) {
  for (int p : {2, 3}) {
    for (std::int64_t k : {3, 4, 5}) {
      const auto c = certify(b_quotient(p, k));
      EXPECT_TRUE(c.holomorphic) << p << " " << k;
      std::int64_t pk = 1;
      for (int i = 0; i < k; ++i) pk *= p;
      if (p == 2) EXPECT_EQ(c.weight, pk / 2);
    }
  }
  EXPECT_THROW(b_quotient(2, 2), PreconditionError);
  EXPECT_THROW(b_quotient(5, 3), PreconditionError);
}

TEST(Certify, CuspOrdersMatchFormula) {
  for (int p : {2, 3}) {
    const auto bq = b_quotient(p, 3);
    for (std::int64_t d : arith::divisors(2304)) EXPECT_EQ(cusp_order(bq, d), order_at(bq.exponents, 2304, d)) << d;
  }
  EXPECT_THROW(cusp_order(b_quotient(2, 3), 5), PreconditionError);
}

TEST(Certify, HolomorphicIffConditions) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> r(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    EtaQuotient eq{12, {}};
    for (std::int64_t d : {1, 2, 3, 4, 6, 12})
      if (int e = r(rng); e != 0) eq.exponents[d] = e;
    if (eq.exponents.empty()) continue;
    const auto c = certify(eq);
    bool nonneg = true;
    for (std::int64_t d : arith::divisors(12)) nonneg = nonneg && order_at(eq.exponents, 12, d) >= 0;
    EXPECT_EQ(c.holomorphic, nonneg && c.weight_integral && c.cond_24_delta && c.cond_24_N_over_delta);
  }
}

TEST(Character, DiscriminantMatchesPrimeExponents) {
  for (int p : {2, 3}) {
    for (std::int64_t k : {3, 4, 5}) {
      const auto bq = b_quotient(p, k);
      EXPECT_EQ(certify(bq).character_discriminant, squarefree_disc(bq.exponents)) << p << " " << k;
    }
  }
  EXPECT_EQ(certify(b_quotient(2, 3)).character_discriminant, 1);
  EXPECT_EQ(certify(b_quotient(3, 3)).character_discriminant, -3);
}

TEST(Character, LegendreOfDiscriminant) {
  const auto bq = b_quotient(3, 3);
  for (std::int64_t d : {5, 7, 11, 13, 35, 49, 77}) {
    int want = 1;
    for (std::int64_t p : {5, 7, 11, 13})
      for (std::int64_t x = d; x % p == 0; x /= p) want *= arith::legendre(-3, p);
    EXPECT_EQ(character(bq, d), want) << d;
  }
  EXPECT_EQ(character(b_quotient(2, 3), 5), 1);
  EXPECT_THROW(character(bq, 9), PreconditionError);
  EXPECT_THROW(character(bq, 4), PreconditionError);
}

TEST(MinLevel, Examples) {
  EXPECT_EQ(min_level({{1, 24}}), 1);
  for (std::int64_t k : {3, 4, 5}) {
    EXPECT_EQ(min_level(b_quotient(2, k).exponents), 2304) << k;
    EXPECT_EQ(min_level(b_quotient(3, k).exponents), 2304) << k;
  }
  EXPECT_THROW(min_level({{1, 1}}), PreconditionError);
  EXPECT_THROW(min_level({{1, -1}, {4, 1}}), PreconditionError);
}

TEST(MinLevel, IsMinimal) {
  for (const auto& e : {b_quotient(2, 3).exponents, b_quotient(3, 4).exponents, ExponentMap{{1, 8}, {2, 8}},
                        ExponentMap{{1, 4}, {5, 4}}}) {
    const std::int64_t N = min_level(e);
    std::int64_t L = 1;
    for (const auto& [d, r] : e) L = std::lcm(L, d);
    EXPECT_EQ(N % L, 0);
    for (std::int64_t M = L; M < N; M += L) {
      Integer s = 0;
      for (const auto& [d, r] : e) s += Integer(M / d) * r;
      EXPECT_NE(s % 24, 0) << M;
    }
  }
}

TEST(Indicator, PaperEntries) {
  EXPECT_EQ(s_indicator(2, 3, 1), 21);
  for (std::int64_t k : {3, 4, 5, 6}) EXPECT_EQ(s_indicator(2, k, 144), 16);
  for (std::int64_t d : {288, 576, 1152, 2304}) EXPECT_EQ(s_indicator(3, 3, d), Rational(19, 4));
  EXPECT_EQ(s_indicator(2, 3, 16), 0);
  EXPECT_EQ(s_indicator(2, 3, 48), 0);
  EXPECT_THROW(s_indicator(2, 3, 5), PreconditionError);
}

TEST(Indicator, TablesMatchClosedForms) {
  for (std::int64_t k : {3, 4, 5}) {
    const Integer p2 = Integer(1) << static_cast<unsigned>(k + 1);
    Integer p3 = 1;
    for (int i = 0; i < k - 1; ++i) p3 *= 3;
    const std::vector<std::vector<std::int64_t>> rows{{1, 2, 3, 4, 6, 8, 12, 24}, {9, 18, 36, 72}, {16, 48}, {144},
                                                      {32, 64, 96, 128, 192, 256, 384, 768}, {288, 576, 1152, 2304}};
    const std::vector<Rational> s2{Rational(3 * p2 - 27), Rational(3 * p2 + 37), 0, 16, Rational(3, 4), Rational(19, 4)};
    Rational r5(8 * p3 + 3, 4);
    r5.canonicalize();
    const std::vector<Rational> s3{Rational(32 * p3 - 27), 37, Rational(8 * p3), 16, r5, Rational(19, 4)};
    const auto t2 = s_table(2, k);
    const auto t3 = s_table(3, k);
    ASSERT_EQ(t2.size(), 6u);
    ASSERT_EQ(t3.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(t2[i].divisors, rows[i]);
      EXPECT_EQ(t3[i].divisors, rows[i]);
      EXPECT_EQ(t2[i].value, s2[i]) << k << " row " << i;
      EXPECT_EQ(t3[i].value, s3[i]) << k << " row " << i;
    }
  }
}

TEST(Indicator, SignAgreesWithCuspOrder) {
  for (int p : {2, 3}) {
    for (std::int64_t k : {3, 4, 5, 6}) {
      const auto bq = b_quotient(p, k);
      for (std::int64_t d : arith::divisors(2304)) {
        EXPECT_EQ(sign(s_indicator(p, k, d)), sign(order_at(bq.exponents, 2304, d))) << p << " " << k << " " << d;
      }
    }
  }
}

TEST(BuildB, DirectAndReducedAgree) {
  for (int p : {2, 3}) {
    for (std::int64_t k : {3, 4}) {
      EXPECT_EQ(build_B(p, k, 3000), build_B_direct(p, k, 3000)) << p << " " << k;
    }
  }
}

TEST(BuildB, ReductionFactorIsOne) {
  for (int p : {2, 3}) {
    const std::int64_t k = 3;
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    const std::uint64_t mod = pk * p;
    const Series A = eta_quotient_series({{{24, static_cast<std::int64_t>(pk * p)}, {24 * p, -static_cast<std::int64_t>(pk)}}},
                                         2000, mod).series;
    EXPECT_EQ(A, Series::one(2000, mod)) << p;
  }
}

TEST(BuildB, TwelveBMatchesPed) {
  const auto ped = partitions::ped_count_table(9 * 100 + 7);
  for (int p : {2, 3}) {
    const std::int64_t k = 3;
    const Series B = build_B_direct(p, k, 24 * 100 + 19);
    const unsigned long mod = *B.modulus();
    for (std::int64_t n = 0; n <= 100; ++n) {
      Integer lhs = 12 * B.coeff(24 * n + 19) % mod;
      EXPECT_EQ(lhs, Integer(ped[9 * n + 7] % mod)) << p << " " << n;
    }
  }
  EXPECT_EQ(Integer(12 * build_B(2, 3, 19).coeff(19) % 16), 12);
}

TEST(BuildB, SupportOnNineteenModTwentyFour) {
  for (int p : {2, 3}) {
    const Series B = build_B(p, 3, 5000);
    for (std::size_t n : B.support()) EXPECT_EQ(n % 24, 19u) << p;
  }
}

TEST(Hecke, ZeroAndValidation) {
  const Series z(100, 16);
  EXPECT_TRUE(hecke_Tp(z, 5, 4, 1).is_zero());
  EXPECT_EQ(hecke_Tp(z, 5, 4, 1).order(), 20u);
  EXPECT_THROW(hecke_Tp(z, 3, 4, 1), PreconditionError);
  EXPECT_THROW(hecke_Tp(z, 2, 4, 1), PreconditionError);
  EXPECT_THROW(hecke_Tp(z, 9, 4, 1), PreconditionError);
  EXPECT_THROW(hecke_Tp(Series(3, 16), 5, 4, 1), PreconditionError);
}

TEST(Hecke, MatchesReference) {
  const Series B = build_B(2, 3, 24 * 700);
  for (std::int64_t p : {5, 7, 11}) {
    EXPECT_EQ(dense(hecke_Tp(B, p, 4, 1)), reference_hecke(dense(B), p, 4, 1, 16)) << p;
  }
  const Series e = eta_quotient_series({{{1, 2}, {11, 2}}}, 3000).series;
  EXPECT_EQ(dense(hecke_Tp(e, 5, 2, 1)), reference_hecke(dense(e), 5, 2, 1, 0));
}

TEST(Hecke, CommuteOnBTwoThree) {
  const std::size_t order = 2000;
  const Series B = build_B(2, 3, order * 35 + 34);
  const Series a = truncate(hecke_Tp(hecke_Tp(B, 5, 4, 1), 7, 4, 1), order);
  const Series b = truncate(hecke_Tp(hecke_Tp(B, 7, 4, 1), 5, 4, 1), order);
  EXPECT_EQ(a, b);
  for (std::size_t n = 1; n <= order; ++n) {
    if (n % 5 && n % 7) EXPECT_EQ(a.coeff(n), B.coeff(35 * n));
  }
}

TEST(HeckeProperty, Linearity) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(0, 15);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Integer> x(500), y(500);
    for (auto& c : x) c = v(rng);
    for (auto& c : y) c = v(rng);
    const Series f = Series::from_coefficients(x, 16), h = Series::from_coefficients(y, 16);
    const Integer c = v(rng);
    for (std::int64_t p : {5, 7, 13}) {
      const int chi = trial % 3 - 1;
      EXPECT_EQ(hecke_Tp(f + h, p, 4, chi), hecke_Tp(f, p, 4, chi) + hecke_Tp(h, p, 4, chi));
      EXPECT_EQ(hecke_Tp(scale(f, c), p, 4, chi), scale(hecke_Tp(f, p, 4, chi), c));
    }
  }
}
