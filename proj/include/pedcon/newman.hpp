#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedcon/eta.hpp"
#include "pedcon/report.hpp"
#include "pedcon/series.hpp"
#include "pedcon/types.hpp"

// Newman's recurrence for a(n), the coefficients of f1 f3^6, and the
// congruence families for ped(n) modulo 24 and 192 that follow from it.
namespace pedcon::newman {

/// Parameters of f1^r f_q^s with r = 1, q = 3, s = 6.
struct NewmanParams {
  static constexpr std::int64_t r = 1;
  static constexpr std::int64_t q = 3;
  static constexpr std::int64_t s = 6;
  static constexpr std::int64_t theta = -1458;  // -2 * 3^6

  static Rational epsilon() { return ratio(r + s, 2); }
  static Rational t() { return ratio(r + s * q, 24); }

  /// 19 (p^2 - 1) / 24, an integer for every prime p >= 5.
  static std::int64_t delta(std::int64_t p);
};

inline constexpr std::size_t kARouteBudget = 20'000'000;
inline constexpr std::size_t kPedRouteBudget = 2'500'000;

/// f1 f3^6 to q^order. Modulo 2 this runs as f1 f6^3, two sparse factors.
Series coeff_a(std::size_t order, Modulus modulus = {});

struct Omega {
  std::int64_t p = 0;
  std::int64_t delta = 0;
  Integer a_delta;       // a(delta)
  int legendre_m2 = 0;   // (-2 / p)
  int legendre_md = 0;   // (-delta / p)
  Integer value;         // a(delta) + p^2 (-2/p) (-delta/p)
  int parity = 0;        // value mod 2, in {0, 1}
};

/// omega(p) for a prime p >= 5. Throws PreconditionError otherwise.
Omega omega(std::int64_t p);

/// Checks a(p^2 n + D) = (omega - p^2 (-2/p) ((n - D)/p)) a(n) - p^5 a((n - D)/p^2)
/// over Z for 0 <= n <= nmax, D = delta(p), with a(x) = 0 off the
/// nonnegative integers.
Report recurrence_check(std::int64_t p, std::int64_t nmax);

enum class FamilyId { T3_1, T3_3_1, T2_2, T3_3, C192, C_final };

std::string to_string(FamilyId id);
std::optional<FamilyId> parse_family(const std::string& text);

enum class ClaimKind {
  vanishing,  // ped(A n + B) == 0 mod M
  equality    // ped(9n + 7) == ped(A n + B) mod M
};

struct Progression {
  std::int64_t j = 0;  // family parameter, 0 when there is none
  Integer A;
  Integer B;
};

/// A claim ped(A n + B) == 0 (mod M) for each listed progression, or an
/// equality against ped(9n + 7). B is not reduced below A: the families are
/// stated for n >= 0 and reducing B would enlarge the claim.
struct FamilyCongruence {
  FamilyId id = FamilyId::C192;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t modulus = 24;
  ClaimKind kind = ClaimKind::vanishing;
  std::vector<Progression> progressions;
  std::string side_condition;  // empty when none

  /// False when the side condition excludes this n.
  bool admits(std::int64_t n) const;
};

/// Builds the family, checking the omega(p) parity it needs. A mismatch
/// throws PreconditionError naming the computed parity. C_final is not a
/// fixed family; use explore_final_conjecture.
FamilyCongruence make_family(FamilyId id, std::int64_t p, std::int64_t k);

/// The families selected for p by the parity of omega(p): T3.1 (and T3.3.1
/// for p = 19) when even, T2.2 and T3.3 when odd.
std::vector<FamilyId> selected_families(std::int64_t p);

enum class Route {
  automatic,   // a(n) mod 2 for M = 24, the ped series for M = 192
  a_series,    // ped(9m + 7) == 12 a(m) mod 24
  ped_series,  // ped(n) mod M from f4 / f1
  radu         // C192 only: A(25n + t') mod 16 for A = f1^5 f3^6 f4 / f2^4
};

std::string to_string(Route r);

/// Checks every progression for 0 <= n <= nmax admitted by the side
/// condition, restricted to the j in jset when one is given.
Report verify_family(const FamilyCongruence& fc, std::int64_t nmax, Route route = Route::automatic,
                     const std::optional<std::vector<std::int64_t>>& jset = std::nullopt,
                     const SeriesSource& source = {});

/// Numerical evidence for ped(9 t^2 n + 9 t^2 j / p + (57 t^2 - 1)/8) == 0
/// mod 192, 1 <= j <= p - 1. Requires p >= 5 prime with (-2/p) = -1,
/// gcd(t, 6) = 1 and p | t.
Report explore_final_conjecture(std::int64_t p, std::int64_t t, std::int64_t nmax, const SeriesSource& source = {});

struct DensityPoint {
  std::int64_t X = 0;
  std::int64_t count = 0;
  double density = 0.0;
};

struct DensityReport {
  std::string series_id;
  std::int64_t modulus = 0;
  std::int64_t residue = 0;
  std::vector<DensityPoint> checkpoints;
};

/// Coefficients 0..X-1 of a named series mod M: "G" (ped(9n + 7)),
/// "ped", "a" (f1 f3^6) or "zero".
Series density_series(const std::string& series_id, std::int64_t M, std::int64_t X, const SeriesSource& source = {});

/// #{0 <= n < X : s(n) == r mod M} / X at each checkpoint X. Counting
/// over [0, X) keeps every density within [0, 1].
DensityReport density_from_series(const Series& s, const std::string& series_id, std::int64_t M, std::int64_t r,
                                  const std::vector<std::int64_t>& checkpoints);

DensityReport density(const std::string& series_id, std::int64_t M, std::int64_t r,
                      const std::vector<std::int64_t>& checkpoints, const SeriesSource& source = {});

nlohmann::json to_json(const Omega& w);
nlohmann::json to_json(const FamilyCongruence& fc);
nlohmann::json to_json(const DensityReport& d);

}  // namespace pedcon::newman
