#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "pedcon/series.hpp"
#include "pedcon/types.hpp"

// Eta quotients as modular forms on Gamma0(N): weight, character, orders at
// cusps, and the Hecke operators T_p on q-expansions.
namespace pedcon::modform {

using ExponentMap = std::map<std::int64_t, std::int64_t>;

/// prod_{delta | N} eta(delta z)^{r_delta}.
struct EtaQuotient {
  std::int64_t level = 1;
  ExponentMap exponents;

  // Throws PreconditionError unless level >= 1 and every key divides it.
  void validate() const;
};

struct Certificate {
  Rational weight;
  bool weight_integral = false;
  Integer sum_delta_r;        // sum delta r_delta
  Integer sum_N_over_delta_r; // sum (N/delta) r_delta
  bool cond_24_delta = false;
  bool cond_24_N_over_delta = false;
  // Squarefree part of (-1)^l prod delta^{r_delta}; 0 when l is not an
  // integer. The character is d -> (D / d).
  Integer character_discriminant;
  std::map<std::int64_t, Rational> cusp_orders;  // keyed by d | N
  bool holomorphic = false;
};

/// Order of vanishing at the cusps c/d, gcd(c, d) = 1:
/// (N/24) sum_delta gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta).
Rational cusp_order(const EtaQuotient& eq, std::int64_t d);

Certificate certify(const EtaQuotient& eq);

/// chi(d) for d >= 1 coprime to 2N, as the product of Legendre symbols
/// (D/p) over the prime factors of d. Throws PreconditionError for other d
/// or a non-integral weight.
int character(const EtaQuotient& eq, std::int64_t d);

/// Smallest N divisible by every delta for which sum (N/delta) r_delta is
/// 0 mod 24. Throws PreconditionError if the weight is not integral or
/// sum delta r_delta is not 0 mod 24, and BudgetError when no N up to
/// lcm(delta) * cap_multiplier works.
std::int64_t min_level(const ExponentMap& exps, std::int64_t cap_multiplier = 576);

/// B_{p,k} = eta(48z)^4 eta(72z)^6 eta(96z) eta(24z)^{p^{k+1} - 11} /
/// eta(24pz)^{p^k} at level 2304, for p in {2, 3} and k > 2.
EtaQuotient b_quotient(int p, std::int64_t k);

/// Holomorphy indicator at d | 2304, the cusp order of B_{p,k} rescaled by
/// 96 / gcd(d, 96)^2 up to a positive factor:
///   S(2) = 8 g72 + 4(2^{k+1} - 11) g24 - 2(2^k - 4) g48 + 1
///   S(3) = 8 g48 + 4(3^{k+1} - 11) g24 - 4(3^{k-1} - 2) g72 + 1
/// with g_x = gcd(d, x)^2 / gcd(d, 96)^2.
Rational s_indicator(int p, std::int64_t k, std::int64_t d);

struct IndicatorRow {
  std::vector<std::int64_t> divisors;
  Rational value;
};

/// The 27 divisors of 2304 grouped by (gcd(d,96)/gcd(d,24), gcd(d,72)/gcd(d,24)),
/// rows in increasing order of that pair.
std::vector<IndicatorRow> s_table(int p, std::int64_t k);

/// q-expansion of B_{p,k} mod p^{k+1} to q^order, computed from the
/// congruent form q^19 f48^4 f72^6 f96 / f24^11.
Series build_B(int p, std::int64_t k, std::size_t order);

/// The same expansion taken directly from every factor of b_quotient,
/// without the binomial reduction.
Series build_B_direct(int p, std::int64_t k, std::size_t order);

/// b(n) = a(pn) + chi_p p^{l-1} a(n/p), with a(n/p) = 0 unless p | n.
/// Output order is floor(order / p). Requires p prime, p coprime to 6,
/// f.order() >= p, weight >= 1 and chi_p in {-1, 0, 1}.
Series hecke_Tp(const Series& f, std::int64_t p, std::int64_t weight, int chi_p);

nlohmann::json to_json(const EtaQuotient& eq);
nlohmann::json to_json(const Certificate& c);

}  // namespace pedcon::modform
