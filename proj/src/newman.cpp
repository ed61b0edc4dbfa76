#include "pedcon/newman.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pedcon/arith.hpp"
#include "pedcon/eta.hpp"
#include "pedcon/radu.hpp"

namespace pedcon::newman {
namespace {

constexpr std::size_t kExactABudget = 200'000;
constexpr std::int64_t kDensityMaxX = 1'000'000;

Integer ipow(std::int64_t base, std::int64_t e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return out;
}

void require_prime_ge5(std::int64_t p, const char* who) {
  if (p < 5 || !arith::is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError(std::string(who) + ": p must be a prime >= 5 (got " + std::to_string(p) + ")");
  }
}

// a(x) for a rational argument: zero unless x is a nonnegative integer.
Integer a_at(const Series& a, const Rational& x) { return a.coeff_at(x); }

std::int64_t to_index(const Integer& v, std::size_t budget, const char* what) {
  if (v < 0 || !v.fits_slong_p() || v > Integer(static_cast<unsigned long>(budget))) {
    throw BudgetError(std::string(what) + ": argument " + v.get_str() + " exceeds the budget of " +
                      std::to_string(budget));
  }
  return v.get_si();
}

Progression progression(std::int64_t j, const Integer& A, const Integer& B) { return Progression{j, A, B}; }

// B for 9 p^e n + 9 p^{e-1} j + (57 p^e - 1)/8.
Integer family_offset(std::int64_t p, std::int64_t e) { return (57 * ipow(p, e) - 1) / 8; }

std::string parity_name(int parity) { return parity == 0 ? "even" : "odd"; }

void require_parity(FamilyId id, const Omega& w, int wanted) {
  if (w.parity != wanted) {
    throw PreconditionError("family " + to_string(id) + " requires omega(p) " + parity_name(wanted) + ", but omega(" +
                            std::to_string(w.p) + ") = " + w.value.get_str() + " is " + parity_name(w.parity));
  }
}

}  // namespace

std::int64_t NewmanParams::delta(std::int64_t p) {
  const std::int64_t p2m1 = arith::checked_mul(p, p) - 1;
  if (p2m1 % 24 != 0) throw PreconditionError("Newman: p^2 - 1 is not divisible by 24 for p = " + std::to_string(p));
  return 19 * (p2m1 / 24);
}

Series coeff_a(std::size_t order, Modulus modulus) {
  if (modulus && *modulus == 2) {
    // f3^6 = (f3^2)^3 == f6^3 mod 2, and f6^3 is a sparse Jacobi series.
    return mul(euler_product(1, order, 2), jacobi_cube(6, order, 2));
  }
  return eta_quotient_series(EtaExponents({{1, 1}, {3, 6}}), order, modulus).series;
}

Omega omega(std::int64_t p) {
  require_prime_ge5(p, "omega");
  Omega w;
  w.p = p;
  w.delta = NewmanParams::delta(p);
  if (static_cast<std::size_t>(w.delta) > kExactABudget) throw BudgetError("omega: a(delta) beyond the exact budget");
  w.a_delta = coeff_a(static_cast<std::size_t>(w.delta)).coeff(w.delta);
  w.legendre_m2 = arith::legendre(-2, p);
  w.legendre_md = arith::legendre(-w.delta, p);
  w.value = w.a_delta + Integer(p * p) * (w.legendre_m2 * w.legendre_md);
  Integer par = w.value % 2;
  w.parity = par == 0 ? 0 : 1;
  return w;
}

Report recurrence_check(std::int64_t p, std::int64_t nmax) {
  require_prime_ge5(p, "recurrence_check");
  if (nmax < 0) throw PreconditionError("recurrence_check: nmax must be nonnegative");
  const std::int64_t D = NewmanParams::delta(p);
  const Integer top = Integer(p * p) * nmax + D;
  const auto order = static_cast<std::size_t>(to_index(top, kExactABudget, "recurrence_check"));
  const Series a = coeff_a(order);
  const Omega w = omega(p);
  const Integer p2 = p * p;
  const Integer p5 = ipow(p, 5);

  Report rep;
  rep.name = "newman-recurrence p=" + std::to_string(p);
  for (std::int64_t n = 0; n <= nmax; ++n) {
    const int leg = arith::legendre(n - D, p);
    const Integer lhs = a.coeff(p * p * n + D);
    const Integer rhs = (w.value - p2 * (w.legendre_m2 * leg)) * a.coeff(n) - p5 * a_at(a, ratio(n - D, p * p));
    ++rep.checked;
    if (lhs != rhs) {
      rep.record_violation({n, lhs - rhs, "a(p^2 n + D) minus right-hand side"});
    }
  }
  rep.details = {{"p", p}, {"delta", D}, {"nmax", nmax}, {"omega", to_json(w)}, {"order", order}};
  return rep;
}

std::string to_string(FamilyId id) {
  switch (id) {
    case FamilyId::T3_1: return "T3.1";
    case FamilyId::T3_3_1: return "T3.3.1";
    case FamilyId::T2_2: return "T2.2";
    case FamilyId::T3_3: return "T3.3";
    case FamilyId::C192: return "C192";
    case FamilyId::C_final: return "C-final";
  }
  return "unknown";
}

std::optional<FamilyId> parse_family(const std::string& text) {
  for (FamilyId id : {FamilyId::T3_1, FamilyId::T3_3_1, FamilyId::T2_2, FamilyId::T3_3, FamilyId::C192,
                      FamilyId::C_final}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::string to_string(Route r) {
  switch (r) {
    case Route::automatic: return "automatic";
    case Route::a_series: return "a-series";
    case Route::ped_series: return "ped-series";
    case Route::radu: return "radu";
  }
  return "unknown";
}

bool FamilyCongruence::admits(std::int64_t n) const {
  switch (id) {
    case FamilyId::T3_3_1: return n % 19 != 0;  // 19 | 24n + 19 exactly when 19 | n
    case FamilyId::T3_3: return (24 * n + 19) % p != 0;
    default: return true;
  }
}

FamilyCongruence make_family(FamilyId id, std::int64_t p, std::int64_t k) {
  if (k < 0) throw PreconditionError("family: k must be nonnegative");
  if (k > 8) throw BudgetError("family: k too large");
  FamilyCongruence fc;
  fc.id = id;
  fc.p = p;
  fc.k = k;

  if (id == FamilyId::C192) {
    fc.modulus = 192;
    fc.p = 0;
    fc.k = 0;
    std::int64_t j = 0;
    for (int B : {43, 88, 133, 223}) fc.progressions.push_back(progression(++j, 225, B));
    return fc;
  }
  if (id == FamilyId::C_final) {
    throw PreconditionError("family C-final depends on (p, t); use explore-conjecture");
  }

  require_prime_ge5(p, "family");
  const Omega w = omega(p);
  fc.modulus = 24;
  switch (id) {
    case FamilyId::T3_1: {
      require_parity(id, w, 0);
      const std::int64_t e = 4 * k + 4;
      for (std::int64_t j = 1; j <= p - 1; ++j) {
        fc.progressions.push_back(progression(j, 9 * ipow(p, e), 9 * ipow(p, e - 1) * j + family_offset(p, e)));
      }
      break;
    }
    case FamilyId::T3_3_1: {
      if (p != 19) throw PreconditionError("family T3.3.1 is stated for p = 19 only");
      require_parity(id, w, 0);
      const std::int64_t e = 4 * k + 2;
      fc.kind = ClaimKind::equality;
      fc.progressions.push_back(progression(0, 9 * ipow(19, e), family_offset(19, e)));
      fc.side_condition = "19 does not divide 24n+19";
      break;
    }
    case FamilyId::T2_2: {
      require_parity(id, w, 1);
      const std::int64_t e = 6 * k + 6;
      for (std::int64_t j = 1; j <= p - 1; ++j) {
        fc.progressions.push_back(progression(j, 9 * ipow(p, e), 9 * ipow(p, e - 1) * j + family_offset(p, e)));
      }
      break;
    }
    case FamilyId::T3_3: {
      if (p == 19) throw PreconditionError("family T3.3 excludes p = 19");
      require_parity(id, w, 1);
      const std::int64_t e = 6 * k + 2;
      fc.progressions.push_back(progression(0, 9 * ipow(p, e), family_offset(p, e)));
      fc.side_condition = "p does not divide 24n+19";
      break;
    }
    default: break;
  }
  return fc;
}

std::vector<FamilyId> selected_families(std::int64_t p) {
  const Omega w = omega(p);
  if (w.parity == 0) {
    std::vector<FamilyId> out{FamilyId::T3_1};
    if (p == 19) out.push_back(FamilyId::T3_3_1);
    return out;
  }
  std::vector<FamilyId> out{FamilyId::T2_2};
  if (p != 19) out.push_back(FamilyId::T3_3);
  return out;
}

Report verify_family(const FamilyCongruence& fc, std::int64_t nmax, Route route,
                     const std::optional<std::vector<std::int64_t>>& jset, const SeriesSource& source) {
  if (nmax < 0) throw PreconditionError("verify_family: nmax must be nonnegative");
  if (fc.modulus != 24 && fc.modulus != 192) throw PreconditionError("verify_family: modulus must be 24 or 192");

  std::vector<Progression> progs;
  for (const auto& pr : fc.progressions) {
    if (!jset || std::find(jset->begin(), jset->end(), pr.j) != jset->end()) progs.push_back(pr);
  }
  if (jset) {
    for (std::int64_t j : *jset) {
      const bool known = std::any_of(fc.progressions.begin(), fc.progressions.end(),
                                     [j](const Progression& pr) { return pr.j == j; });
      if (!known) throw PreconditionError("verify_family: j = " + std::to_string(j) + " is not in the family's range");
    }
  }

  if (route == Route::automatic) route = fc.modulus == 24 ? Route::a_series : Route::ped_series;
  if (route == Route::a_series && fc.modulus != 24) throw PreconditionError("verify_family: the a(n) route is for modulus 24");
  if (route == Route::radu && fc.id != FamilyId::C192) throw PreconditionError("verify_family: the Radu route is for C192");

  Integer max_arg = fc.kind == ClaimKind::equality ? Integer(9 * nmax + 7) : Integer(0);
  for (const auto& pr : progs) max_arg = std::max(max_arg, Integer(pr.A * nmax + pr.B));

  Report rep;
  rep.name = "family " + to_string(fc.id);
  const auto u64 = static_cast<std::uint64_t>(fc.modulus);

  // Residue of ped(arg) modulo M, or of the coefficient that determines it.
  std::function<Integer(const Integer&)> value;
  Series backing;
  Integer residue_scale = 1;  // ped(arg) mod M == residue_scale * value mod M
  std::size_t order = 0;
  if (route == Route::ped_series) {
    order = static_cast<std::size_t>(to_index(max_arg, kPedRouteBudget, "verify_family"));
    backing = source ? expand(source, EtaExponents({{1, -1}, {4, 1}}), order, u64) : ped_series(order, u64);
    value = [&backing](const Integer& arg) { return backing.coeff(arg.get_si()); };
  } else {
    for (const auto& pr : progs) {
      if (pr.A % 9 != 0 || (pr.B - 7) % 9 != 0) throw PreconditionError("verify_family: progression is not inside 9n+7");
    }
    const Integer max_m = (max_arg - 7) / 9;
    const std::size_t budget = route == Route::a_series ? kARouteBudget : kPedRouteBudget;
    order = static_cast<std::size_t>(to_index(max_m < 0 ? Integer(0) : max_m, budget, "verify_family"));
    if (route == Route::a_series) {
      backing = source ? expand(source, EtaExponents({{1, 1}, {3, 6}}), order, 2) : coeff_a(order, 2);
      residue_scale = 12;
    } else {
      backing = expand(source, EtaExponents({{1, 5}, {2, -4}, {3, 6}, {4, 1}}), order, 16);
      residue_scale = 12;
    }
    value = [&backing](const Integer& arg) { return backing.coeff(Integer((arg - 7) / 9).get_si()); };
  }

  for (const auto& pr : progs) {
    for (std::int64_t n = 0; n <= nmax; ++n) {
      if (!fc.admits(n)) continue;
      const Integer arg = pr.A * n + pr.B;
      const Integer v = value(arg);
      ++rep.checked;
      if (fc.kind == ClaimKind::vanishing) {
        if (v != 0) {
          rep.record_violation({arg.get_si(), Integer(residue_scale * v) % fc.modulus,
                                "ped(" + arg.get_str() + ") mod " + std::to_string(fc.modulus) + ", j=" +
                                    std::to_string(pr.j) + ", n=" + std::to_string(n)});
        }
      } else {
        const Integer base = value(Integer(9 * n + 7));
        if (v != base) {
          rep.record_violation({arg.get_si(), Integer(residue_scale * (v - base)) % fc.modulus,
                                "ped(" + arg.get_str() + ") - ped(" + std::to_string(9 * n + 7) + ") mod " +
                                    std::to_string(fc.modulus) + ", n=" + std::to_string(n)});
        }
      }
    }
  }

  rep.details = {{"family", to_json(fc)}, {"nmax", nmax}, {"route", to_string(route)}, {"series_order", order}};
  if (fc.p >= 5) rep.details["omega"] = to_json(omega(fc.p));

  if (route == Route::radu) {
    // The finite check above covers n <= nmax; Radu's criterion extends the
    // four residues 4, 9, 14, 24 mod 25 to every n.
    nlohmann::json proofs = nlohmann::json::array();
    std::vector<std::int64_t> covered;
    bool all_proven = true;
    for (std::int64_t t : {4, 14}) {
      const auto tuple = radu::RaduTuple::from_positional(25, 12, 60, t, std::vector<std::int64_t>{5, -4, 6, 1, 0, 0});
      const auto vr = radu::radu_verify(tuple, {}, 16, 16, source);
      all_proven = all_proven && vr.status == radu::VerificationStatus::proven;
      covered.insert(covered.end(), vr.Pt.begin(), vr.Pt.end());
      proofs.push_back({{"t", t}, {"status", radu::to_string(vr.status)}, {"P_t", vr.Pt}, {"nu_floor", vr.nu_floor.get_str()}});
    }
    std::sort(covered.begin(), covered.end());
    bool covers = true;
    for (const auto& pr : progs) {
      const Integer tp = (pr.B - 7) / 9;
      if (pr.A != 225 || !std::binary_search(covered.begin(), covered.end(), tp.get_si())) covers = false;
    }
    rep.details["radu_proofs"] = proofs;
    rep.details["proven_for_all_n"] = all_proven && covers;
  }
  return rep;
}

Report explore_final_conjecture(std::int64_t p, std::int64_t t, std::int64_t nmax, const SeriesSource& source) {
  require_prime_ge5(p, "explore_final_conjecture");
  if (arith::legendre(-2, p) != -1) {
    throw PreconditionError("explore_final_conjecture: (-2/" + std::to_string(p) + ") = 1, the conjecture needs -1");
  }
  if (t < 1 || arith::gcd(t, 6) != 1) throw PreconditionError("explore_final_conjecture: t must be positive with gcd(t, 6) = 1");
  if (t % p != 0) throw PreconditionError("explore_final_conjecture: p must divide t");
  if (nmax < 0) throw PreconditionError("explore_final_conjecture: nmax must be nonnegative");

  FamilyCongruence fc;
  fc.id = FamilyId::C_final;
  fc.p = p;
  fc.modulus = 192;
  const Integer t2 = Integer(t) * t;
  for (std::int64_t j = 1; j <= p - 1; ++j) {
    fc.progressions.push_back(progression(j, 9 * t2, 9 * t2 * j / p + (57 * t2 - 1) / 8));
  }
  Report rep = verify_family(fc, nmax, Route::ped_series, std::nullopt, source);
  rep.name = "final-conjecture p=" + std::to_string(p) + " t=" + std::to_string(t);
  rep.details["t"] = t;
  rep.details.erase("omega");
  rep.details["evidence_only"] = true;
  return rep;
}

Series density_series(const std::string& series_id, std::int64_t M, std::int64_t X, const SeriesSource& source) {
  if (M < 2 || static_cast<std::uint64_t>(M) > Series::kMaxModulus) throw PreconditionError("density: modulus must be at least 2");
  if (X < 1) throw PreconditionError("density: X must be positive");
  if (X > kDensityMaxX) throw BudgetError("density: X exceeds " + std::to_string(kDensityMaxX));
  const auto m = static_cast<std::uint64_t>(M);
  const auto top = static_cast<std::size_t>(X - 1);
  if (series_id == "G") {
    const Series ped = source ? expand(source, EtaExponents({{1, -1}, {4, 1}}), 9 * top + 7, m) : ped_series(9 * top + 7, m);
    return extract_progression(ped, 9, 7);
  }
  if (series_id == "ped") return source ? expand(source, EtaExponents({{1, -1}, {4, 1}}), top, m) : ped_series(top, m);
  if (series_id == "a") return source ? expand(source, EtaExponents({{1, 1}, {3, 6}}), top, m) : coeff_a(top, m);
  if (series_id == "zero") return Series(top, m);
  throw PreconditionError("density: unknown series '" + series_id + "' (expected G, ped, a or zero)");
}

DensityReport density_from_series(const Series& s, const std::string& series_id, std::int64_t M, std::int64_t r,
                                  const std::vector<std::int64_t>& checkpoints) {
  if (M < 2) throw PreconditionError("density: modulus must be at least 2");
  if (r < 0 || r >= M) throw PreconditionError("density: residue must lie in [0, M)");
  std::vector<std::int64_t> xs = checkpoints;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.empty()) throw PreconditionError("density: no checkpoints");
  if (xs.front() < 1) throw PreconditionError("density: checkpoints must be positive");
  if (static_cast<std::size_t>(xs.back()) > s.order() + 1) throw PreconditionError("density: series too short for X");

  const Series red = s.modulus() && *s.modulus() == static_cast<std::uint64_t>(M) ? s : reduce_mod(s, static_cast<std::uint64_t>(M));
  DensityReport rep{series_id, M, r, {}};
  std::int64_t count = 0;
  std::size_t n = 0;
  for (std::int64_t X : xs) {
    for (; n < static_cast<std::size_t>(X); ++n) {
      if (red.residue(n) == static_cast<std::uint64_t>(r)) ++count;
    }
    rep.checkpoints.push_back({X, count, static_cast<double>(count) / static_cast<double>(X)});
  }
  return rep;
}

DensityReport density(const std::string& series_id, std::int64_t M, std::int64_t r,
                      const std::vector<std::int64_t>& checkpoints, const SeriesSource& source) {
  if (checkpoints.empty()) throw PreconditionError("density: no checkpoints");
  const std::int64_t X = *std::max_element(checkpoints.begin(), checkpoints.end());
  return density_from_series(density_series(series_id, M, X, source), series_id, M, r, checkpoints);
}

nlohmann::json to_json(const Omega& w) {
  return {{"p", w.p},
          {"delta", w.delta},
          {"a_delta", w.a_delta.get_str()},
          {"legendre_minus2", w.legendre_m2},
          {"legendre_minus_delta", w.legendre_md},
          {"value", w.value.get_str()},
          {"parity", w.parity == 0 ? "even" : "odd"}};
}

nlohmann::json to_json(const FamilyCongruence& fc) {
  nlohmann::json progs = nlohmann::json::array();
  for (const auto& pr : fc.progressions) progs.push_back({{"j", pr.j}, {"A", pr.A.get_str()}, {"B", pr.B.get_str()}});
  return {{"id", to_string(fc.id)},
          {"p", fc.p},
          {"k", fc.k},
          {"modulus", fc.modulus},
          {"kind", fc.kind == ClaimKind::vanishing ? "vanishing" : "equality"},
          {"progressions", progs},
          {"side_condition", fc.side_condition}};
}

nlohmann::json to_json(const DensityReport& d) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& c : d.checkpoints) pts.push_back({{"X", c.X}, {"count", c.count}, {"density", c.density}});
  return {{"series", d.series_id}, {"modulus", d.modulus}, {"residue", d.residue}, {"checkpoints", pts}};
}

}  // namespace pedcon::newman
