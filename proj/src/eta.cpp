#include "pedcon/eta.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pedcon/arith.hpp"

namespace pedcon {

EtaExponents::EtaExponents(std::map<std::int64_t, std::int64_t> exps, std::int64_t scale_)
    : exponents(std::move(exps)), scale(scale_) {
  std::erase_if(exponents, [](const auto& kv) { return kv.second == 0; });
  validate();
}

void EtaExponents::validate() const {
  if (scale < 1) throw PreconditionError("eta quotient scale must be positive");
  if (exponents.empty()) throw PreconditionError("eta quotient needs at least one nonzero exponent");
  for (const auto& [delta, r] : exponents) {
    if (delta < 1) throw PreconditionError("eta quotient index must be positive, got " + std::to_string(delta));
    if (r == 0) throw PreconditionError("eta quotient exponents must be nonzero");
  }
}

Rational EtaExponents::q_power() const {
  Integer total = 0;
  for (const auto& [delta, r] : exponents) total += Integer(delta) * r;
  return ratio(total * scale, 24);
}

std::string EtaExponents::key() const {
  std::string out;
  for (const auto& [delta, r] : exponents) {
    if (!out.empty()) out += '.';
    out += std::to_string(delta) + "^" + std::to_string(r);
  }
  return out + "@" + std::to_string(scale);
}

Series euler_product(std::int64_t k, std::size_t order, Modulus modulus) {
  if (k < 1) throw PreconditionError("euler_product: k must be positive");
  const auto kk = static_cast<std::size_t>(k);
  std::vector<std::pair<std::size_t, std::int64_t>> terms{{0, 1}};
  for (std::size_t n = 1;; ++n) {
    const std::size_t lo = n * (3 * n - 1) / 2;
    if (lo > order / kk) break;
    const std::int64_t sign = (n % 2 == 0) ? 1 : -1;
    terms.emplace_back(kk * lo, sign);
    const std::size_t hi = n * (3 * n + 1) / 2;
    if (hi <= order / kk) terms.emplace_back(kk * hi, sign);
  }
  return Series::from_sparse(order, modulus, terms);
}

Series jacobi_cube(std::int64_t k, std::size_t order, Modulus modulus) {
  if (k < 1) throw PreconditionError("jacobi_cube: k must be positive");
  const auto kk = static_cast<std::size_t>(k);
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  for (std::size_t n = 0;; ++n) {
    const std::size_t tri = n * (n + 1) / 2;
    if (tri > order / kk) break;
    const auto weight = static_cast<std::int64_t>(2 * n + 1);
    terms.emplace_back(kk * tri, n % 2 == 0 ? weight : -weight);
  }
  return Series::from_sparse(order, modulus, terms);
}

namespace {

// f_d^{p e} == f_{p d}^{e} (mod p), applied until every |r_d| < p.
void reduce_binomial(std::map<std::int64_t, std::int64_t>& exps, std::int64_t p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = exps.begin(); it != exps.end(); ++it) {
      const std::int64_t r = it->second;
      if (std::abs(r) < p) continue;
      const std::int64_t carried = r / p;
      it->second = r - carried * p;
      exps[arith::checked_mul(it->first, p)] += carried;
      changed = true;
      break;
    }
    std::erase_if(exps, [](const auto& kv) { return kv.second == 0; });
  }
}

}  // namespace

EtaExpansion eta_quotient_series(const EtaExponents& eq, std::size_t order, Modulus modulus) {
  eq.validate();
  std::int64_t g = 0;
  for (const auto& kv : eq.exponents) g = std::gcd(g, arith::checked_mul(kv.first, eq.scale));

  std::map<std::int64_t, std::int64_t> exps;
  for (const auto& [delta, r] : eq.exponents) exps[delta * eq.scale / g] = r;
  if (modulus && *modulus < (std::uint64_t{1} << 31) && arith::is_prime(*modulus)) {
    reduce_binomial(exps, static_cast<std::int64_t>(*modulus));
  }

  const std::size_t reduced = order / static_cast<std::size_t>(g);
  std::vector<Series> numerators, denominators;
  for (const auto& [d, r] : exps) {
    if (static_cast<std::size_t>(d) > reduced) continue;  // factor is 1 to this order
    const std::int64_t cubes = std::abs(r) / 3;
    const std::int64_t singles = std::abs(r) % 3;
    auto& bucket = r > 0 ? numerators : denominators;
    if (cubes > 0) {
      const Series cube = jacobi_cube(d, reduced, modulus);
      for (std::int64_t i = 0; i < cubes; ++i) bucket.push_back(cube);
    }
    if (singles > 0) {
      const Series single = euler_product(d, reduced, modulus);
      for (std::int64_t i = 0; i < singles; ++i) bucket.push_back(single);
    }
  }

  std::stable_sort(numerators.begin(), numerators.end(),
                   [](const Series& a, const Series& b) { return a.nonzero_count() < b.nonzero_count(); });
  Series product = Series::one(reduced, modulus);
  for (const auto& f : numerators) product = mul(product, f);
  for (const auto& f : denominators) product = div(product, f);

  if (g > 1) product = inflate(product, static_cast<std::size_t>(g), order);
  return {std::move(product), eq.q_power()};
}

Series theta_phi(std::size_t order, Modulus modulus) {
  std::vector<std::pair<std::size_t, std::int64_t>> terms{{0, 1}};
  for (std::size_t n = 1; n * n <= order; ++n) terms.emplace_back(n * n, 2);
  return Series::from_sparse(order, modulus, terms);
}

Series theta_psi(std::size_t order, Modulus modulus) {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  for (std::size_t n = 0; n * (n + 1) / 2 <= order; ++n) terms.emplace_back(n * (n + 1) / 2, 1);
  return Series::from_sparse(order, modulus, terms);
}

Series ped_series(std::size_t order, Modulus modulus) {
  return div(euler_product(4, order, modulus), euler_product(1, order, modulus));
}

Series expand(const SeriesSource& source, const EtaExponents& eq, std::size_t order, Modulus modulus) {
  if (source) return source(eq, order, modulus);
  return eta_quotient_series(eq, order, modulus).series;
}

}  // namespace pedcon
