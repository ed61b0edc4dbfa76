#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "pedcon/series.hpp"

namespace pedcon {

/// Exponent data of prod_delta f_{scale*delta}^{r_delta}, where
/// f_k = (q^k; q^k)_inf. With scale 24, {2: -4} means eta(48z)^-4.
struct EtaExponents {
  std::map<std::int64_t, std::int64_t> exponents;
  std::int64_t scale = 1;

  EtaExponents() = default;
  EtaExponents(std::map<std::int64_t, std::int64_t> exps, std::int64_t scale = 1);

  // Throws PreconditionError unless the map is nonempty, every delta is
  // positive, every exponent nonzero and scale positive.
  void validate() const;

  /// Exponent of the q-power prefactor: scale * sum(delta r_delta) / 24.
  Rational q_power() const;

  /// Canonical text form, e.g. "1^-11.2^4.3^6.4^1@1".
  std::string key() const;
};

struct EtaExpansion {
  Series series;     // prod f_delta^{r_delta}, without the q-power prefactor
  Rational q_power;  // the omitted prefactor exponent
};

/// (q^k; q^k)_inf from the pentagonal number theorem.
Series euler_product(std::int64_t k, std::size_t order, Modulus modulus = {});

/// (q^k; q^k)_inf^3 = sum_{n >= 0} (-1)^n (2n + 1) q^{k n (n + 1) / 2}.
Series jacobi_cube(std::int64_t k, std::size_t order, Modulus modulus = {});

/// Expansion of an eta quotient. Each factor f_delta^{r} is split into
/// Jacobi cubes and pentagonal factors, all sparse, so the cost is dominated
/// by O(order * sqrt(order)) sparse multiplications and divisions. When the
/// modulus is a prime p, factors are first reduced with
/// f_d^{p e} == f_{p d}^e (mod p).
EtaExpansion eta_quotient_series(const EtaExponents& eq, std::size_t order, Modulus modulus = {});

/// Where expansions come from. The CLI installs a disk cache here; an empty
/// source means eta_quotient_series.
using SeriesSource = std::function<Series(const EtaExponents&, std::size_t order, Modulus modulus)>;

Series expand(const SeriesSource& source, const EtaExponents& eq, std::size_t order, Modulus modulus = {});

/// phi(q) = sum_{n in Z} q^{n^2}.
Series theta_phi(std::size_t order, Modulus modulus = {});

/// psi(q) = sum_{n >= 0} q^{n(n+1)/2}.
Series theta_psi(std::size_t order, Modulus modulus = {});

/// sum ped(n) q^n = f_4 / f_1.
Series ped_series(std::size_t order, Modulus modulus = {});

}  // namespace pedcon
