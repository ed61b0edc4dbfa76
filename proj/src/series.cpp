#include "pedcon/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "pedcon/arith.hpp"

namespace pedcon {
namespace {

template <class Vec>
using value_of = typename Vec::value_type;

template <class Vec>
constexpr bool is_exact_v = std::is_same_v<Vec, Series::Exact>;

void validate_modulus(const Modulus& m) {
  if (!m) return;
  if (*m < 2 || *m > Series::kMaxModulus) {
    throw PreconditionError("series modulus must lie in [2, 2^62], got " + std::to_string(*m));
  }
}

Series::Storage zero_storage(std::size_t order, const Modulus& m) {
  if (!m) return Series::Exact(order + 1);
  if (*m <= Series::kByteModulusLimit) return Series::Bytes(order + 1, 0);
  return Series::Words(order + 1, 0);
}

std::uint64_t residue_of(const Integer& v, std::uint64_t m) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

std::uint64_t residue_of(std::int64_t v, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = v % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

template <class V>
bool nonzero(const V& v) {
  if constexpr (std::is_same_v<V, Integer>) {
    return sgn(v) != 0;
  } else {
    return v != 0;
  }
}

template <class Vec>
std::vector<std::size_t> nonzero_indices(const Vec& v, std::size_t n, std::size_t from = 0) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i <= n; ++i) {
    if (nonzero(v[i])) out.push_back(i);
  }
  return out;
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

void require_same_ring(const Series& a, const Series& b, const char* op) {
  if (a.modulus() != b.modulus()) {
    throw ModulusMismatch(std::string(op) + ": operands have moduli " + modulus_string(a.modulus()) +
                          " and " + modulus_string(b.modulus()));
  }
}

template <class Vec>
Vec mul_kernel(const Vec& a, const Vec& b, std::size_t n, std::uint64_t m) {
  const Vec* outer = &a;
  const Vec* inner = &b;
  auto outer_nz = nonzero_indices(a, n);
  auto inner_nz = nonzero_indices(b, n);
  if (outer_nz.size() > inner_nz.size()) {
    std::swap(outer, inner);
    std::swap(outer_nz, inner_nz);
  }
  const bool inner_sparse = inner_nz.size() * 4 <= n + 1;

  if constexpr (is_exact_v<Vec>) {
    Vec out(n + 1);
    for (std::size_t i : outer_nz) {
      const Integer& ai = (*outer)[i];
      if (inner_sparse) {
        for (std::size_t j : inner_nz) {
          if (i + j > n) break;
          mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), (*inner)[j].get_mpz_t());
        }
      } else {
        for (std::size_t j = 0; i + j <= n; ++j) {
          if (sgn((*inner)[j]) != 0) mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), (*inner)[j].get_mpz_t());
        }
      }
    }
    return out;
  } else if constexpr (std::is_same_v<Vec, Series::Bytes>) {
    // Byte residues are at most 254, so the unreduced sum of n + 1
    // products stays far below 2^64.
    std::vector<std::uint64_t> acc(n + 1, 0);
    const std::uint8_t* bp = inner->data();
    for (std::size_t i : outer_nz) {
      const std::uint64_t ai = (*outer)[i];
      std::uint64_t* ap = acc.data() + i;
      if (inner_sparse) {
        for (std::size_t j : inner_nz) {
          if (i + j > n) break;
          ap[j] += ai * bp[j];
        }
      } else {
        const std::size_t len = n - i + 1;
        for (std::size_t j = 0; j < len; ++j) ap[j] += ai * bp[j];
      }
    }
    Vec out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = static_cast<std::uint8_t>(acc[k] % m);
    return out;
  } else {
    Vec out(n + 1, 0);
    for (std::size_t i : outer_nz) {
      const std::uint64_t ai = (*outer)[i];
      if (inner_sparse) {
        for (std::size_t j : inner_nz) {
          if (i + j > n) break;
          out[i + j] = addmod(out[i + j], arith::mulmod(ai, (*inner)[j], m), m);
        }
      } else {
        for (std::size_t j = 0; i + j <= n; ++j) {
          if ((*inner)[j] != 0) out[i + j] = addmod(out[i + j], arith::mulmod(ai, (*inner)[j], m), m);
        }
      }
    }
    return out;
  }
}

template <class Vec>
Vec div_kernel(const Vec& num, const Vec& den, std::size_t n, std::uint64_t m) {
  const auto nz = nonzero_indices(den, n, 1);
  Vec q(n + 1);

  if constexpr (is_exact_v<Vec>) {
    const Integer& c0 = den[0];
    if (c0 != 1 && c0 != -1) {
      throw PreconditionError("div: constant term " + c0.get_str() + " is not a unit over Z");
    }
    const bool negate = c0 == -1;
    Integer acc;
    std::size_t live = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      while (live < nz.size() && nz[live] <= k) ++live;
      acc = num[k];
      for (std::size_t t = 0; t < live; ++t) {
        const std::size_t j = nz[t];
        mpz_submul(acc.get_mpz_t(), den[j].get_mpz_t(), q[k - j].get_mpz_t());
      }
      if (negate) acc = -acc;
      q[k] = acc;
    }
    return q;
  } else {
    const auto inv0 = arith::inverse_mod(den[0], m);
    if (!inv0) {
      throw PreconditionError("div: constant term " + std::to_string(den[0]) + " is not a unit modulo " +
                              std::to_string(m));
    }
    std::vector<std::size_t> idx(nz.begin(), nz.end());
    std::vector<value_of<Vec>> vals;
    vals.reserve(idx.size());
    for (std::size_t j : idx) vals.push_back(den[j]);
    std::size_t live = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      while (live < idx.size() && idx[live] <= k) ++live;
      std::uint64_t s = 0;
      if constexpr (std::is_same_v<Vec, Series::Bytes>) {
        const std::uint8_t* qp = q.data() + k;
        for (std::size_t t = 0; t < live; ++t) s += std::uint64_t{vals[t]} * *(qp - idx[t]);
        s %= m;
      } else {
        for (std::size_t t = 0; t < live; ++t) s = addmod(s, arith::mulmod(vals[t], q[k - idx[t]], m), m);
      }
      const std::uint64_t r = addmod(num[k], m - s == m ? 0 : m - s, m);
      q[k] = static_cast<value_of<Vec>>(arith::mulmod(r, *inv0, m));
    }
    return q;
  }
}

template <class Fn>
Series map_coeffs(const Series& a, std::size_t order, Fn&& fn) {
  return std::visit(
      [&](const auto& x) -> Series {
        using Vec = std::decay_t<decltype(x)>;
        Vec out(order + 1);
        for (std::size_t i = 0; i <= order; ++i) out[i] = fn(x, i);
        return Series(std::move(out), a.modulus());
      },
      a.storage());
}

}  // namespace

Series::Series() : Series(0, std::nullopt) {}

Series::Series(std::size_t order, Modulus modulus)
    : order_(order), modulus_(modulus), coeffs_(Exact{}) {
  validate_modulus(modulus_);
  coeffs_ = zero_storage(order, modulus_);
}

Series::Series(Storage coeffs, Modulus modulus) : modulus_(modulus), coeffs_(std::move(coeffs)) {
  validate_modulus(modulus_);
  const std::size_t len = std::visit([](const auto& v) { return v.size(); }, coeffs_);
  if (len == 0) throw PreconditionError("series needs at least one coefficient");
  order_ = len - 1;
  const std::size_t expected = zero_storage(0, modulus_).index();
  if (coeffs_.index() != expected) {
    throw PreconditionError("series storage kind does not match modulus " + modulus_string(modulus_));
  }
  if (modulus_) {
    const std::uint64_t m = *modulus_;
    std::visit(
        [&](const auto& v) {
          using Vec = std::decay_t<decltype(v)>;
          if constexpr (!is_exact_v<Vec>) {
            for (auto c : v) {
              if (c >= m) throw PreconditionError("series residue outside [0, m)");
            }
          }
        },
        coeffs_);
  }
}

Series Series::from_coefficients(std::span<const Integer> coeffs, Modulus modulus) {
  if (coeffs.empty()) throw PreconditionError("series needs at least one coefficient");
  Series out(coeffs.size() - 1, modulus);
  std::visit(
      [&](auto& v) {
        using Vec = std::decay_t<decltype(v)>;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
          if constexpr (is_exact_v<Vec>) {
            v[i] = coeffs[i];
          } else {
            v[i] = static_cast<value_of<Vec>>(residue_of(coeffs[i], *modulus));
          }
        }
      },
      out.coeffs_);
  return out;
}

Series Series::from_coefficients(std::initializer_list<long> coeffs, Modulus modulus) {
  std::vector<Integer> tmp(coeffs.begin(), coeffs.end());
  return from_coefficients(std::span<const Integer>(tmp), modulus);
}

Series Series::from_sparse(std::size_t order, Modulus modulus,
                           std::span<const std::pair<std::size_t, std::int64_t>> terms) {
  Series out(order, modulus);
  std::visit(
      [&](auto& v) {
        using Vec = std::decay_t<decltype(v)>;
        for (const auto& [e, c] : terms) {
          if (e > order) continue;
          if constexpr (is_exact_v<Vec>) {
            v[e] += c;
          } else {
            const std::uint64_t m = *modulus;
            v[e] = static_cast<value_of<Vec>>(addmod(v[e], residue_of(c, m), m));
          }
        }
      },
      out.coeffs_);
  return out;
}

Series Series::constant(const Integer& c, std::size_t order, Modulus modulus) {
  Series out(order, modulus);
  std::visit(
      [&](auto& v) {
        using Vec = std::decay_t<decltype(v)>;
        if constexpr (is_exact_v<Vec>) {
          v[0] = c;
        } else {
          v[0] = static_cast<value_of<Vec>>(residue_of(c, *modulus));
        }
      },
      out.coeffs_);
  return out;
}

Integer Series::coeff(std::int64_t n) const {
  if (n < 0) return 0;
  if (static_cast<std::size_t>(n) > order_) {
    throw std::out_of_range("coefficient " + std::to_string(n) + " beyond series order " + std::to_string(order_));
  }
  return std::visit(
      [&](const auto& v) -> Integer {
        using Vec = std::decay_t<decltype(v)>;
        if constexpr (is_exact_v<Vec>) {
          return v[n];
        } else {
          return Integer(static_cast<unsigned long>(v[n]));
        }
      },
      coeffs_);
}

Integer Series::coeff_at(const Rational& index) const {
  if (index.get_den() != 1 || index < 0) return 0;
  const Integer& n = index.get_num();
  if (!n.fits_slong_p()) throw std::out_of_range("coefficient index too large");
  return coeff(n.get_si());
}

std::uint64_t Series::residue(std::size_t n) const {
  if (!modulus_) throw PreconditionError("residue() on an exact series");
  if (n > order_) throw std::out_of_range("residue index beyond series order");
  return std::visit(
      [&](const auto& v) -> std::uint64_t {
        using Vec = std::decay_t<decltype(v)>;
        if constexpr (is_exact_v<Vec>) {
          return 0;
        } else {
          return v[n];
        }
      },
      coeffs_);
}

bool Series::is_zero_at(std::size_t n) const {
  if (n > order_) throw std::out_of_range("index beyond series order");
  return std::visit([&](const auto& v) { return !nonzero(v[n]); }, coeffs_);
}

bool Series::is_zero() const { return nonzero_count() == 0; }

std::size_t Series::nonzero_count() const {
  return std::visit([&](const auto& v) { return nonzero_indices(v, order_).size(); }, coeffs_);
}

std::vector<std::size_t> Series::support() const {
  return std::visit([&](const auto& v) { return nonzero_indices(v, order_); }, coeffs_);
}

std::vector<Integer> Series::coefficients() const {
  std::vector<Integer> out;
  out.reserve(order_ + 1);
  for (std::size_t i = 0; i <= order_; ++i) out.push_back(coeff(static_cast<std::int64_t>(i)));
  return out;
}

bool operator==(const Series& a, const Series& b) {
  return a.order_ == b.order_ && a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
}

Series add(const Series& a, const Series& b) {
  require_same_ring(a, b, "add");
  const std::size_t n = std::min(a.order(), b.order());
  return map_coeffs(a, n, [&](const auto& x, std::size_t i) {
    using Vec = std::decay_t<decltype(x)>;
    const auto& y = std::get<Vec>(b.storage());
    if constexpr (is_exact_v<Vec>) {
      return Integer(x[i] + y[i]);
    } else {
      return static_cast<value_of<Vec>>(addmod(x[i], y[i], *a.modulus()));
    }
  });
}

Series neg(const Series& a) {
  return map_coeffs(a, a.order(), [&](const auto& x, std::size_t i) {
    using Vec = std::decay_t<decltype(x)>;
    if constexpr (is_exact_v<Vec>) {
      return Integer(-x[i]);
    } else {
      return static_cast<value_of<Vec>>(x[i] == 0 ? 0 : *a.modulus() - x[i]);
    }
  });
}

Series sub(const Series& a, const Series& b) {
  require_same_ring(a, b, "sub");
  return add(a, neg(b));
}

Series scale(const Series& a, const Integer& c) {
  return map_coeffs(a, a.order(), [&](const auto& x, std::size_t i) {
    using Vec = std::decay_t<decltype(x)>;
    if constexpr (is_exact_v<Vec>) {
      return Integer(x[i] * c);
    } else {
      const std::uint64_t m = *a.modulus();
      return static_cast<value_of<Vec>>(arith::mulmod(x[i], residue_of(c, m), m));
    }
  });
}

Series mul(const Series& a, const Series& b) {
  require_same_ring(a, b, "mul");
  const std::size_t n = std::min(a.order(), b.order());
  const std::uint64_t m = a.modulus().value_or(0);
  return std::visit(
      [&](const auto& x) -> Series {
        using Vec = std::decay_t<decltype(x)>;
        return Series(mul_kernel(x, std::get<Vec>(b.storage()), n, m), a.modulus());
      },
      a.storage());
}

Series div(const Series& num, const Series& den) {
  require_same_ring(num, den, "div");
  const std::size_t n = std::min(num.order(), den.order());
  const std::uint64_t m = num.modulus().value_or(0);
  return std::visit(
      [&](const auto& x) -> Series {
        using Vec = std::decay_t<decltype(x)>;
        return Series(div_kernel(x, std::get<Vec>(den.storage()), n, m), num.modulus());
      },
      num.storage());
}

Series inv(const Series& a) { return div(Series::one(a.order(), a.modulus()), a); }

Series pow(const Series& a, std::int64_t e) {
  if (e < 0) {
    const Series base = inv(a);
    if (e == INT64_MIN) return mul(pow(base, INT64_MAX), base);
    return pow(base, -e);
  }
  Series result = Series::one(a.order(), a.modulus());
  Series base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Series reduce_mod(const Series& a, std::uint64_t m) {
  validate_modulus(m);
  if (a.modulus() && *a.modulus() % m != 0) {
    throw ModulusMismatch("reduce_mod: " + std::to_string(m) + " does not divide source modulus " +
                          std::to_string(*a.modulus()));
  }
  Series::Storage st = zero_storage(a.order(), m);
  std::visit(
      [&](auto& dst) {
        using Dst = std::decay_t<decltype(dst)>;
        std::visit(
            [&](const auto& src) {
              using Src = std::decay_t<decltype(src)>;
              for (std::size_t i = 0; i <= a.order(); ++i) {
                std::uint64_t r;
                if constexpr (is_exact_v<Src>) {
                  r = residue_of(src[i], m);
                } else {
                  r = static_cast<std::uint64_t>(src[i]) % m;
                }
                if constexpr (!is_exact_v<Dst>) dst[i] = static_cast<value_of<Dst>>(r);
              }
            },
            a.storage());
      },
      st);
  return Series(std::move(st), m);
}

Series extract_progression(const Series& a, std::int64_t m, std::int64_t t) {
  if (m < 1) throw PreconditionError("extract_progression: step must be positive");
  if (t < 0 || t >= m) throw PreconditionError("extract_progression: need 0 <= t < m");
  if (static_cast<std::size_t>(t) > a.order()) {
    throw PreconditionError("extract_progression: start " + std::to_string(t) + " beyond series order");
  }
  const std::size_t order = (a.order() - static_cast<std::size_t>(t)) / static_cast<std::size_t>(m);
  return map_coeffs(a, order, [&](const auto& x, std::size_t i) { return x[static_cast<std::size_t>(m) * i + t]; });
}

Series truncate(const Series& a, std::size_t order) {
  if (order > a.order()) throw PreconditionError("truncate: cannot extend a series beyond its order");
  return map_coeffs(a, order, [](const auto& x, std::size_t i) { return x[i]; });
}

Series inflate(const Series& a, std::size_t factor, std::size_t order) {
  if (factor == 0) throw PreconditionError("inflate: factor must be positive");
  if (order / factor > a.order()) throw PreconditionError("inflate: source order too small for target order");
  return map_coeffs(a, order, [&](const auto& x, std::size_t i) {
    using V = std::decay_t<decltype(x[0])>;
    return i % factor == 0 ? x[i / factor] : V(0);
  });
}

Series shift(const Series& a, std::size_t by, std::size_t order) {
  if (order >= by && order - by > a.order()) throw PreconditionError("shift: source order too small");
  return map_coeffs(a, order, [&](const auto& x, std::size_t i) {
    using V = std::decay_t<decltype(x[0])>;
    return i >= by ? x[i - by] : V(0);
  });
}

}  // namespace pedcon
