#include "pedcon/radu.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace pedcon::radu {
namespace {

std::int64_t k_of(std::int64_t m) {
  const Integer m2 = Integer(static_cast<long>(m)) * m - 1;
  return arith::gcd(Integer(m2 % 24).get_si(), 24);
}

bool divides(const Integer& d, const Integer& n) { return d != 0 && n % d == 0; }

Integer product_abs_powers(const ExponentMap& r) {
  Integer prod = 1;
  for (const auto& [delta, e] : r) {
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), Integer(static_cast<long>(delta)).get_mpz_t(), static_cast<unsigned long>(std::llabs(e)));
    prod *= p;
  }
  return prod;
}

}  // namespace

std::string to_string(VerificationStatus s) {
  switch (s) {
    case VerificationStatus::proven: return "proven";
    case VerificationStatus::refuted: return "refuted";
    case VerificationStatus::precondition_failed: return "precondition_failed";
  }
  return "unknown";
}

RaduTuple RaduTuple::from_positional(std::int64_t m, std::int64_t M, std::int64_t N, std::int64_t t,
                                     std::span<const std::int64_t> exps) {
  if (M < 1) throw PreconditionError("radu: M must be positive");
  const auto divs = arith::divisors(M);
  if (exps.size() != divs.size()) {
    throw PreconditionError("radu: expected " + std::to_string(divs.size()) + " exponents (one per divisor of M = " +
                            std::to_string(M) + "), got " + std::to_string(exps.size()));
  }
  RaduTuple out{m, M, N, t, {}};
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (exps[i] != 0) out.r[divs[i]] = exps[i];
  }
  out.validate();
  return out;
}

void RaduTuple::validate() const {
  if (m < 1 || M < 1 || N < 1) throw PreconditionError("radu: m, M and N must be positive");
  if (t < 0 || t >= m) throw PreconditionError("radu: t must lie in [0, m)");
  for (const auto& [delta, e] : r) {
    if (delta < 1 || M % delta != 0) {
      throw PreconditionError("radu: exponent key " + std::to_string(delta) + " does not divide M = " + std::to_string(M));
    }
  }
}

std::int64_t RaduTuple::sum_r() const {
  std::int64_t s = 0;
  for (const auto& [delta, e] : r) s += e;
  return s;
}

std::int64_t RaduTuple::sum_delta_r() const {
  std::int64_t s = 0;
  for (const auto& [delta, e] : r) s += arith::checked_mul(delta, e);
  return s;
}

arith::ResidueClassSet p_t_set(std::int64_t m, std::int64_t M, std::int64_t t, const ExponentMap& r) {
  RaduTuple tuple{m, M, 1, t, r};
  tuple.validate();
  const std::int64_t sdr = tuple.sum_delta_r();
  const auto squares = arith::squares_mod(arith::checked_mul(24, m));
  arith::ResidueClassSet out{m, {}};
  for (std::int64_t s : squares.members) {
    if ((s - 1) % 24 != 0) throw Error("p_t_set: square class " + std::to_string(s) + " is not 1 mod 24");
    const Integer v = Integer(static_cast<long>(t)) * s + Integer(static_cast<long>((s - 1) / 24)) * sdr;
    Integer res = v % m;
    if (res < 0) res += static_cast<long>(m);
    out.members.push_back(res.get_si());
  }
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  return out;
}

DeltaStarReport delta_star_check(const RaduTuple& tuple) {
  tuple.validate();
  const auto& [m, M, N, t, r] = tuple;
  const std::int64_t k = k_of(m);
  DeltaStarReport rep;

  rep.cond1 = true;
  for (const auto& [p, e] : arith::factorize(m)) {
    if (N % p != 0) rep.cond1 = false;
  }

  rep.cond2 = true;
  const Integer mN = Integer(static_cast<long>(m)) * N;
  for (const auto& [delta, e] : r) {
    if (!divides(Integer(static_cast<long>(delta)), mN)) rep.cond2 = false;
  }

  Rational inner = 0;
  for (const auto& [delta, e] : r) inner += ratio(mN * e, Integer(static_cast<long>(delta)));
  inner.canonicalize();
  const Rational c3 = inner * k * N;
  rep.cond3 = c3.get_den() == 1 && c3.get_num() % 24 == 0;

  rep.cond4 = (Integer(static_cast<long>(k)) * N * tuple.sum_r()) % 8 == 0;

  const Integer lhs = Integer(-24) * k * t - Integer(static_cast<long>(k)) * tuple.sum_delta_r();
  const Integer m24 = Integer(24) * m;
  Integer g;
  mpz_gcd(g.get_mpz_t(), lhs.get_mpz_t(), m24.get_mpz_t());
  rep.cond5 = divides(m24 / g, Integer(static_cast<long>(N)));

  rep.cond6_applies = m % 2 == 0;
  if (rep.cond6_applies) {
    const Integer prod = product_abs_powers(r);
    const int s2 = arith::valuation(prod, 2);
    Integer j = prod;
    mpz_tdiv_q_2exp(j.get_mpz_t(), prod.get_mpz_t(), static_cast<mp_bitcnt_t>(s2));
    rep.cond6_first = (k * N) % 4 == 0 && (Integer(s2) * N) % 8 == 0;
    rep.cond6_second = s2 % 2 == 0 && ((1 - j) * N) % 8 == 0;
    rep.cond6 = rep.cond6_first || rep.cond6_second;
  } else {
    rep.cond6 = true;
  }

  rep.overall = rep.cond1 && rep.cond2 && rep.cond3 && rep.cond4 && rep.cond5 && rep.cond6;
  return rep;
}

std::vector<Matrix2> coset_reps(std::int64_t N) {
  if (N < 1) throw PreconditionError("coset_reps: N must be positive");
  const bool ok = arith::is_squarefree(N) || (N % 2 == 0 && arith::is_squarefree(N / 2));
  if (!ok) {
    throw PreconditionError("coset_reps: neither N = " + std::to_string(N) +
                            " nor N/2 is squarefree, so (1 0; delta 1) need not cover all double cosets");
  }
  std::vector<Matrix2> reps;
  for (std::int64_t delta : arith::divisors(N)) reps.push_back({1, 0, delta, 1});
  return reps;
}

Rational p_gamma(const RaduTuple& tuple, const Matrix2& g) {
  const std::int64_t k = k_of(tuple.m);
  const std::int64_t mc = arith::checked_mul(tuple.m, g.c);
  std::optional<Rational> best;
  for (std::int64_t lambda = 0; lambda < tuple.m; ++lambda) {
    Rational sum = 0;
    for (const auto& [delta, e] : tuple.r) {
      const std::int64_t arg = arith::checked_mul(delta, g.a + arith::checked_mul(k * lambda, g.c));
      const Integer gg = arith::gcd(arg, mc);
      sum += ratio(gg * gg * e, Integer(static_cast<long>(delta)) * tuple.m);
    }
    sum /= 24;
    if (!best || sum < *best) best = sum;
  }
  best->canonicalize();
  return *best;
}

Rational p_prime_gamma(const ExponentMap& rprime, std::int64_t N, const Matrix2& g) {
  Rational sum = 0;
  for (const auto& [delta, e] : rprime) {
    if (delta < 1 || N % delta != 0) {
      throw PreconditionError("p_prime_gamma: key " + std::to_string(delta) + " does not divide N");
    }
    const Integer gg = arith::gcd(delta, g.c);
    sum += ratio(gg * gg * e, Integer(static_cast<long>(delta)));
  }
  sum /= 24;
  sum.canonicalize();
  return sum;
}

NuBound nu_bound(const RaduTuple& tuple, const ExponentMap& rprime) {
  tuple.validate();
  const auto pt = p_t_set(tuple.m, tuple.M, tuple.t, tuple.r);
  if (pt.members.empty()) throw PreconditionError("nu_bound: P(t) is empty");
  std::int64_t sum_rp = 0;
  std::int64_t sum_drp = 0;
  for (const auto& [delta, e] : rprime) {
    sum_rp += e;
    sum_drp += arith::checked_mul(delta, e);
  }
  const Integer index = arith::gamma0_index(tuple.N);
  Rational inner = Rational(Integer(tuple.sum_r() + sum_rp) * index) - sum_drp -
                   ratio(tuple.sum_delta_r(), tuple.m);
  NuBound out;
  out.nu = inner / 24 - ratio(pt.members.front(), tuple.m);
  out.nu.canonicalize();
  mpz_fdiv_q(out.floor.get_mpz_t(), out.nu.get_num_mpz_t(), out.nu.get_den_mpz_t());
  return out;
}

VerificationReport radu_verify(const RaduTuple& tuple, const ExponentMap& rprime, std::uint64_t u,
                               std::size_t order_margin, const SeriesSource& source) {
  tuple.validate();
  if (u < 1) throw PreconditionError("radu_verify: u must be at least 1");
  VerificationReport rep;
  rep.tuple = tuple;
  rep.rprime = rprime;
  rep.u = u;

  auto fail_stage = [&rep](const std::string& stage) {
    if (rep.failed_stage.empty()) rep.failed_stage = stage;
  };

  rep.delta_star = delta_star_check(tuple);
  if (!rep.delta_star.overall) fail_stage("delta_star");

  try {
    rep.cosets = coset_reps(tuple.N);
    for (const auto& g : rep.cosets) {
      rep.p_values.push_back(p_gamma(tuple, g) + p_prime_gamma(rprime, tuple.N, g));
      if (rep.p_values.back() < 0) fail_stage("p_gamma");
    }
  } catch (const PreconditionError&) {
    fail_stage("coset_reps");
  }

  rep.Pt = p_t_set(tuple.m, tuple.M, tuple.t, tuple.r).members;
  const auto nu = nu_bound(tuple, rprime);
  rep.nu = nu.nu;
  rep.nu_floor = nu.floor;

  if (nu.floor >= 0 && u > 1 && !tuple.r.empty()) {
    if (!nu.floor.fits_slong_p()) throw BudgetError("radu_verify: nu is too large to check");
    const std::int64_t nmax = nu.floor.get_si();
    const std::int64_t top = arith::checked_mul(tuple.m, nmax + 1) + rep.Pt.back();
    rep.expansion_order = static_cast<std::size_t>(top) + order_margin;
    const Series A = expand(source, EtaExponents(tuple.r), rep.expansion_order, u);
    for (std::int64_t n = 0; n <= nmax && !rep.witness; ++n) {
      for (std::int64_t tp : rep.Pt) {
        const std::int64_t idx = tuple.m * n + tp;
        ++rep.checked;
        if (!A.is_zero_at(static_cast<std::size_t>(idx))) {
          rep.witness = Witness{idx, A.coeff(idx), "A(" + std::to_string(tuple.m) + "*" + std::to_string(n) + "+" +
                                                       std::to_string(tp) + ") mod " + std::to_string(u)};
          break;
        }
      }
    }
  } else if (nu.floor >= 0) {
    // Modulo 1 or for the empty product every coefficient check is trivial.
    rep.checked = static_cast<std::uint64_t>(nu.floor.get_si() + 1) * rep.Pt.size();
  }

  if (rep.witness) {
    rep.status = VerificationStatus::refuted;
  } else if (!rep.failed_stage.empty()) {
    rep.status = VerificationStatus::precondition_failed;
  } else {
    rep.status = VerificationStatus::proven;
  }
  return rep;
}

nlohmann::json to_json(const RaduTuple& t) {
  nlohmann::json r = nlohmann::json::object();
  for (const auto& [delta, e] : t.r) r[std::to_string(delta)] = e;
  return {{"m", t.m}, {"M", t.M}, {"N", t.N}, {"t", t.t}, {"r", r}};
}

nlohmann::json to_json(const DeltaStarReport& d) {
  return {{"cond1", d.cond1}, {"cond2", d.cond2}, {"cond3", d.cond3}, {"cond4", d.cond4},
          {"cond5", d.cond5}, {"cond6", d.cond6}, {"cond6_applies", d.cond6_applies},
          {"cond6_first_branch", d.cond6_first}, {"cond6_second_branch", d.cond6_second}, {"overall", d.overall}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json rp = nlohmann::json::object();
  for (const auto& [delta, e] : r.rprime) rp[std::to_string(delta)] = e;
  nlohmann::json cos = nlohmann::json::array();
  for (std::size_t i = 0; i < r.cosets.size(); ++i) {
    cos.push_back({{"delta", r.cosets[i].c}, {"p_plus_pprime", r.p_values[i].get_str()}});
  }
  nlohmann::json out = {{"tuple", to_json(r.tuple)},
                        {"rprime", rp},
                        {"delta_star", to_json(r.delta_star)},
                        {"P_t", r.Pt},
                        {"cosets", cos},
                        {"nu", r.nu.get_str()},
                        {"nu_floor", r.nu_floor.get_str()},
                        {"u", r.u},
                        {"expansion_order", r.expansion_order},
                        {"checked", r.checked},
                        {"status", to_string(r.status)},
                        {"failed_stage", r.failed_stage}};
  out["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
  return out;
}

}  // namespace pedcon::radu
