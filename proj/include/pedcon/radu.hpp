#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedcon/arith.hpp"
#include "pedcon/eta.hpp"
#include "pedcon/report.hpp"
#include "pedcon/types.hpp"

// Radu's finite criterion for congruences of eta-quotient coefficients on
// arithmetic progressions.
namespace pedcon::radu {

// delta -> r_delta, zeros omitted.
using ExponentMap = std::map<std::int64_t, std::int64_t>;

struct RaduTuple {
  std::int64_t m = 1;
  std::int64_t M = 1;
  std::int64_t N = 1;
  std::int64_t t = 0;
  ExponentMap r;

  /// Exponents listed positionally over the ascending divisors of M, as in
  /// (5, -4, 6, 1, 0, 0) for M = 12.
  static RaduTuple from_positional(std::int64_t m, std::int64_t M, std::int64_t N, std::int64_t t,
                                   std::span<const std::int64_t> exps);

  /// Throws PreconditionError unless m, M, N >= 1, 0 <= t < m and every key
  /// divides M.
  void validate() const;

  std::int64_t sum_r() const;
  std::int64_t sum_delta_r() const;
};

struct DeltaStarReport {
  bool cond1 = false;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool cond5 = false;
  bool cond6 = false;
  // Condition 6 only binds when m is even; its two alternatives are kept
  // separately so a report shows which one held.
  bool cond6_applies = false;
  bool cond6_first = false;
  bool cond6_second = false;
  bool overall = false;
};

struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
};

struct NuBound {
  Rational nu;
  Integer floor;
};

enum class VerificationStatus { proven, refuted, precondition_failed };

std::string to_string(VerificationStatus s);

struct VerificationReport {
  RaduTuple tuple;
  ExponentMap rprime;
  DeltaStarReport delta_star;
  std::vector<std::int64_t> Pt;
  std::vector<Matrix2> cosets;
  std::vector<Rational> p_values;  // p(gamma) + p'(gamma) per coset
  Rational nu;
  Integer nu_floor;
  std::uint64_t u = 1;
  std::size_t expansion_order = 0;
  std::uint64_t checked = 0;
  VerificationStatus status = VerificationStatus::precondition_failed;
  std::string failed_stage;  // empty unless precondition_failed
  std::optional<Witness> witness;
};

/// P(t): residues t' = t s + (s - 1)/24 * sum(delta r_delta) mod m over the
/// squares s of units mod 24m. Each s is checked to be 1 mod 24.
arith::ResidueClassSet p_t_set(std::int64_t m, std::int64_t M, std::int64_t t, const ExponentMap& r);

DeltaStarReport delta_star_check(const RaduTuple& tuple);

/// Matrices (1 0; delta 1) for delta | N. Valid as double coset
/// representatives only when N or N/2 is squarefree; otherwise throws
/// PreconditionError.
std::vector<Matrix2> coset_reps(std::int64_t N);

Rational p_gamma(const RaduTuple& tuple, const Matrix2& gamma);
Rational p_prime_gamma(const ExponentMap& rprime, std::int64_t N, const Matrix2& gamma);

NuBound nu_bound(const RaduTuple& tuple, const ExponentMap& rprime);

/// Runs the whole criterion: Delta* membership, coset representatives,
/// p + p' >= 0, the bound nu, and the coefficient check A(mn + t') == 0
/// mod u for t' in P(t), 0 <= n <= floor(nu).
///
/// A nonzero coefficient is reported as refuted even when a structural
/// stage also failed, since the counterexample stands on its own.
VerificationReport radu_verify(const RaduTuple& tuple, const ExponentMap& rprime, std::uint64_t u,
                               std::size_t order_margin = 16, const SeriesSource& source = {});

nlohmann::json to_json(const RaduTuple& t);
nlohmann::json to_json(const DeltaStarReport& d);
nlohmann::json to_json(const VerificationReport& r);

}  // namespace pedcon::radu
