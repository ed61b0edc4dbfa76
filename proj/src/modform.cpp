#include "pedcon/modform.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "pedcon/arith.hpp"
#include "pedcon/eta.hpp"

namespace pedcon::modform {
namespace {

constexpr std::int64_t kBLevel = 2304;

void check_family(int p, std::int64_t k) {
  if (p != 2 && p != 3) throw PreconditionError("B_{p,k}: p must be 2 or 3");
  if (k <= 2) throw PreconditionError("B_{p,k}: k must exceed 2");
  if (k > 30) throw BudgetError("B_{p,k}: k too large");
}

Integer ipow(std::int64_t base, std::int64_t e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

std::uint64_t family_modulus(int p, std::int64_t k) {
  const Integer m = ipow(p, k + 1);
  if (!m.fits_ulong_p() || m > Integer(static_cast<unsigned long>(Series::kMaxModulus))) {
    throw BudgetError("B_{p,k}: modulus p^{k+1} exceeds the supported range");
  }
  return m.get_ui();
}

Rational gsq_ratio(std::int64_t d, std::int64_t x) {
  const std::int64_t gx = arith::gcd(d, x);
  const std::int64_t g96 = arith::gcd(d, 96);
  return ratio(gx * gx, g96 * g96);
}

}  // namespace

void EtaQuotient::validate() const {
  if (level < 1) throw PreconditionError("eta quotient: level must be positive");
  for (const auto& [delta, r] : exponents) {
    if (delta < 1 || level % delta != 0) {
      throw PreconditionError("eta quotient: " + std::to_string(delta) + " does not divide the level " +
                              std::to_string(level));
    }
  }
}

Rational cusp_order(const EtaQuotient& eq, std::int64_t d) {
  eq.validate();
  const std::int64_t N = eq.level;
  if (d < 1 || N % d != 0) throw PreconditionError("cusp_order: d must divide N");
  Rational sum = 0;
  for (const auto& [delta, r] : eq.exponents) {
    const std::int64_t g = arith::gcd(d, delta);
    sum += ratio(Integer(g) * g * r, Integer(delta));
  }
  Rational out = sum * N / (Integer(24) * arith::gcd(d, N / d) * d);
  out.canonicalize();
  return out;
}

Certificate certify(const EtaQuotient& eq) {
  eq.validate();
  Certificate c;
  Integer sum_r = 0;
  for (const auto& [delta, r] : eq.exponents) {
    sum_r += r;
    c.sum_delta_r += Integer(delta) * r;
    c.sum_N_over_delta_r += Integer(eq.level / delta) * r;
  }
  c.weight = ratio(sum_r, 2);
  c.weight.canonicalize();
  c.weight_integral = c.weight.get_den() == 1;
  c.cond_24_delta = c.sum_delta_r % 24 == 0;
  c.cond_24_N_over_delta = c.sum_N_over_delta_r % 24 == 0;

  if (c.weight_integral) {
    // Squarefree part, tracked through exponent parities so that large r
    // never materialise prod delta^r.
    std::map<std::int64_t, std::int64_t> parity;
    for (const auto& [delta, r] : eq.exponents) {
      for (const auto& [p, e] : arith::factorize(delta)) parity[p] += static_cast<std::int64_t>(e) * r;
    }
    Integer D = Integer(c.weight.get_num()) % 2 == 0 ? 1 : -1;
    for (const auto& [p, e] : parity) {
      if (e % 2 != 0) D *= p;
    }
    c.character_discriminant = D;
  }

  bool all_nonneg = true;
  for (std::int64_t d : arith::divisors(eq.level)) {
    c.cusp_orders[d] = cusp_order(eq, d);
    if (c.cusp_orders[d] < 0) all_nonneg = false;
  }
  c.holomorphic = all_nonneg && c.weight_integral && c.cond_24_delta && c.cond_24_N_over_delta;
  return c;
}

int character(const EtaQuotient& eq, std::int64_t d) {
  const Certificate c = certify(eq);
  if (!c.weight_integral) throw PreconditionError("character: weight is not an integer");
  if (d < 1 || arith::gcd(d, 2 * eq.level) != 1) throw PreconditionError("character: d must be positive and coprime to 2N");
  int value = 1;
  for (const auto& [p, e] : arith::factorize(d)) {
    Integer D = c.character_discriminant % p;
    const int s = arith::legendre(D.get_si(), p);
    if (e % 2 == 1) value *= s;
  }
  return value;
}

std::int64_t min_level(const ExponentMap& exps, std::int64_t cap_multiplier) {
  if (exps.empty()) throw PreconditionError("min_level: no exponents");
  std::int64_t L = 1;
  Integer sum_r = 0;
  Integer sum_dr = 0;
  for (const auto& [delta, r] : exps) {
    if (delta < 1) throw PreconditionError("min_level: delta must be positive");
    L = arith::lcm(L, delta);
    sum_r += r;
    sum_dr += Integer(delta) * r;
  }
  if (sum_r % 2 != 0) throw PreconditionError("min_level: weight sum(r)/2 is not an integer");
  if (sum_dr % 24 != 0) throw PreconditionError("min_level: sum delta r_delta is not 0 mod 24 at any level");
  for (std::int64_t u = 1; u <= cap_multiplier; ++u) {
    const std::int64_t N = arith::checked_mul(L, u);
    Integer s = 0;
    for (const auto& [delta, r] : exps) s += Integer(N / delta) * r;
    if (s % 24 == 0) return N;
  }
  throw BudgetError("min_level: no admissible level up to " + std::to_string(cap_multiplier) + " * " + std::to_string(L));
}

EtaQuotient b_quotient(int p, std::int64_t k) {
  check_family(p, k);
  const Integer top = ipow(p, k + 1) - 11;
  const Integer low = ipow(p, k);
  if (!top.fits_slong_p()) throw BudgetError("B_{p,k}: exponent overflow");
  ExponentMap e{{24, top.get_si()}, {48, 4}, {72, 6}, {96, 1}};
  e[24 * p] -= low.get_si();
  std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
  return EtaQuotient{kBLevel, std::move(e)};
}

Rational s_indicator(int p, std::int64_t k, std::int64_t d) {
  check_family(p, k);
  if (d < 1 || kBLevel % d != 0) throw PreconditionError("s_indicator: d must divide 2304");
  Rational v;
  if (p == 2) {
    v = 8 * gsq_ratio(d, 72) + Rational(4 * (ipow(2, k + 1) - 11)) * gsq_ratio(d, 24) -
        Rational(2 * (ipow(2, k) - 4)) * gsq_ratio(d, 48) + 1;
  } else {
    v = 8 * gsq_ratio(d, 48) + Rational(4 * (ipow(3, k + 1) - 11)) * gsq_ratio(d, 24) -
        Rational(4 * (ipow(3, k - 1) - 2)) * gsq_ratio(d, 72) + 1;
  }
  v.canonicalize();
  return v;
}

std::vector<IndicatorRow> s_table(int p, std::int64_t k) {
  std::map<std::pair<std::int64_t, std::int64_t>, IndicatorRow> rows;
  for (std::int64_t d : arith::divisors(kBLevel)) {
    const std::int64_t g24 = arith::gcd(d, 24);
    const std::pair key{arith::gcd(d, 96) / g24, arith::gcd(d, 72) / g24};
    auto& row = rows[key];
    const Rational v = s_indicator(p, k, d);
    if (!row.divisors.empty() && row.value != v) throw Error("s_table: indicator is not constant on a row");
    row.value = v;
    row.divisors.push_back(d);
  }
  std::vector<IndicatorRow> out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

Series build_B(int p, std::int64_t k, std::size_t order) {
  check_family(p, k);
  const std::uint64_t mod = family_modulus(p, k);
  if (order < 19) return Series(order, mod);
  const EtaExponents reduced({{1, -11}, {2, 4}, {3, 6}, {4, 1}}, 24);
  const auto exp = eta_quotient_series(reduced, order - 19, mod);
  return shift(exp.series, 19, order);
}

Series build_B_direct(int p, std::int64_t k, std::size_t order) {
  const EtaQuotient bq = b_quotient(p, k);
  const std::uint64_t mod = family_modulus(p, k);
  const EtaExponents full(bq.exponents, 1);
  const Rational qp = full.q_power();
  if (qp.get_den() != 1 || qp < 0) throw Error("build_B_direct: unexpected q-power");
  const auto lead = static_cast<std::size_t>(qp.get_num().get_ui());
  if (order < lead) return Series(order, mod);
  const auto exp = eta_quotient_series(full, order - lead, mod);
  return shift(exp.series, lead, order);
}

Series hecke_Tp(const Series& f, std::int64_t p, std::int64_t weight, int chi_p) {
  if (p < 2 || !arith::is_prime(static_cast<std::uint64_t>(p))) throw PreconditionError("hecke_Tp: p must be prime");
  if (6 % p == 0) throw PreconditionError("hecke_Tp: p must be coprime to 6");
  if (weight < 1) throw PreconditionError("hecke_Tp: weight must be at least 1");
  if (chi_p < -1 || chi_p > 1) throw PreconditionError("hecke_Tp: chi(p) must be -1, 0 or 1");
  if (f.order() < static_cast<std::size_t>(p)) throw PreconditionError("hecke_Tp: series order is below p");

  const auto P = static_cast<std::size_t>(p);
  const std::size_t out_order = f.order() / P;
  Integer factor = ipow(p, weight - 1) * chi_p;
  std::vector<Integer> out(out_order + 1);
  for (std::size_t n = 0; n <= out_order; ++n) {
    out[n] = f.coeff(static_cast<std::int64_t>(n * P));
    if (n % P == 0 && factor != 0) out[n] += factor * f.coeff(static_cast<std::int64_t>(n / P));
  }
  if (f.modulus()) {
    const Integer m(static_cast<unsigned long>(*f.modulus()));
    for (auto& c : out) {
      c %= m;
      if (c < 0) c += m;
    }
  }
  return Series::from_coefficients(out, f.modulus());
}

nlohmann::json to_json(const EtaQuotient& eq) {
  nlohmann::json e = nlohmann::json::object();
  for (const auto& [delta, r] : eq.exponents) e[std::to_string(delta)] = r;
  return {{"level", eq.level}, {"exponents", e}};
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json cusps = nlohmann::json::array();
  for (const auto& [d, ord] : c.cusp_orders) cusps.push_back({{"d", d}, {"order", ord.get_str()}});
  return {{"weight", c.weight.get_str()},
          {"weight_integral", c.weight_integral},
          {"sum_delta_r", c.sum_delta_r.get_str()},
          {"sum_N_over_delta_r", c.sum_N_over_delta_r.get_str()},
          {"cond_24_delta", c.cond_24_delta},
          {"cond_24_N_over_delta", c.cond_24_N_over_delta},
          {"character_discriminant", c.character_discriminant.get_str()},
          {"cusp_orders", cusps},
          {"holomorphic", c.holomorphic}};
}

}  // namespace pedcon::modform
