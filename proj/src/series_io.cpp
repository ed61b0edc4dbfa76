#include "pedcon/series_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "pedcon/arith.hpp"

namespace pedcon {
namespace {

std::string expect_header(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("series file: missing '" + name + "=' header");
  const std::string prefix = name + "=";
  if (line.rfind(prefix, 0) != 0) throw PreconditionError("series file: expected '" + prefix + "', got '" + line + "'");
  return line.substr(prefix.size());
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw PreconditionError(std::string("series file: bad ") + what + " '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw PreconditionError(std::string("series file: ") + what + " out of range");
  }
}

std::vector<std::size_t> spot_indices(std::size_t order, std::size_t spots) {
  std::vector<std::size_t> out;
  if (order == 0 || spots == 0) return out;
  if (order <= spots) {
    for (std::size_t n = 1; n <= order; ++n) out.push_back(n);
    return out;
  }
  // Evenly spaced, always including the last coefficient, which is the one a
  // truncated or partially written file gets wrong first.
  for (std::size_t i = 0; i < spots; ++i) out.push_back(1 + (order - 1) * (i + 1) / spots);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

void write_series(std::ostream& out, const Series& s) {
  out << "order=" << s.order() << '\n' << "modulus=" << modulus_string(s.modulus()) << '\n';
  std::visit(
      [&out](const auto& v) {
        for (const auto& c : v) {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, std::uint8_t>) {
            out << static_cast<unsigned>(c) << '\n';
          } else {
            out << c << '\n';
          }
        }
      },
      s.storage());
}

Series read_series(std::istream& in) {
  const std::uint64_t order = parse_u64(expect_header(in, "order"), "order");
  const std::string mod_text = expect_header(in, "modulus");
  Modulus modulus;
  if (mod_text != "none") {
    modulus = parse_u64(mod_text, "modulus");
    if (*modulus < 2) throw PreconditionError("series file: modulus must be at least 2");
  }

  std::vector<Integer> coeffs;
  coeffs.reserve(order + 1);
  std::string line;
  while (coeffs.size() <= order && std::getline(in, line)) {
    Integer v;
    if (line.empty() || v.set_str(line, 10) != 0) throw PreconditionError("series file: bad coefficient '" + line + "'");
    coeffs.push_back(std::move(v));
  }
  if (coeffs.size() != order + 1) throw PreconditionError("series file: fewer coefficients than order + 1");
  if (std::getline(in, line) && !line.empty()) throw PreconditionError("series file: trailing data after coefficients");
  if (modulus) {
    for (const auto& c : coeffs) {
      if (c < 0 || c >= Integer(static_cast<unsigned long>(*modulus))) {
        throw PreconditionError("series file: residue outside [0, m)");
      }
    }
  }
  return Series::from_coefficients(coeffs, modulus);
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

bool spot_check_eta_series(const Series& s, const EtaExponents& eq, std::size_t spots) {
  const auto idx = spot_indices(s.order(), spots);
  if (idx.empty()) return s.coeff(0) == 1;
  const std::size_t top = idx.back();

  std::vector<std::int64_t> sigma(top + 1, 0);
  for (std::size_t d = 1; d <= top; ++d) {
    for (std::size_t n = d; n <= top; n += d) sigma[n] += static_cast<std::int64_t>(d);
  }
  // c(j) = -sum over factors f_k^r with k | j of k r sigma(j / k).
  std::vector<Integer> c(top + 1, 0);
  for (const auto& [delta, r] : eq.exponents) {
    const auto k = static_cast<std::size_t>(delta * eq.scale);
    for (std::size_t j = k; j <= top; j += k) {
      c[j] -= Integer(static_cast<long>(k)) * r * sigma[j / k];
    }
  }

  if (s.modulus()) {
    const std::uint64_t m = *s.modulus();
    std::vector<std::uint64_t> cm(top + 1);
    for (std::size_t j = 0; j <= top; ++j) {
      Integer r = c[j] % Integer(static_cast<unsigned long>(m));
      if (r < 0) r += static_cast<unsigned long>(m);
      cm[j] = r.get_ui();
    }
    std::vector<std::uint64_t> F(top + 1);
    for (std::size_t n = 0; n <= top; ++n) F[n] = s.residue(n);
    if (F[0] != 1) return false;
    for (std::size_t n : idx) {
      std::uint64_t rhs = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (cm[j] == 0) continue;
        rhs = (rhs + arith::mulmod(cm[j], F[n - j], m)) % m;
      }
      if (arith::mulmod(n % m, F[n], m) != rhs) return false;
    }
    return true;
  }

  const auto F = s.coefficients();
  if (F[0] != 1) return false;
  for (std::size_t n : idx) {
    Integer rhs = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (c[j] != 0 && F[n - j] != 0) rhs += c[j] * F[n - j];
    }
    if (Integer(static_cast<unsigned long>(n)) * F[n] != rhs) return false;
  }
  return true;
}

SeriesCache::SeriesCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::string SeriesCache::cache_key(const EtaExponents& eq, std::size_t order, const Modulus& modulus) {
  return sha256_hex("eta:" + eq.key() + "|order=" + std::to_string(order) + "|modulus=" + modulus_string(modulus));
}

SeriesCache::Entry SeriesCache::get_or_build(const EtaExponents& eq, std::size_t order, Modulus modulus) {
  Entry entry;
  entry.file = dir_ / (cache_key(eq, order, modulus) + ".series");

  if (std::filesystem::exists(entry.file)) {
    std::ifstream in(entry.file, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      std::istringstream parse(bytes);
      Series s = read_series(parse);
      if (s.order() == order && s.modulus() == modulus && spot_check_eta_series(s, eq)) {
        entry.series = std::move(s);
        entry.file_sha256 = sha256_hex(bytes);
        entry.loaded = true;
        return entry;
      }
    } catch (const PreconditionError&) {
      // Corrupt entry; fall through and rebuild it.
    }
  }

  entry.series = eta_quotient_series(eq, order, modulus).series;
  std::ostringstream text;
  write_series(text, entry.series);
  const std::string bytes = text.str();
  const auto tmp = entry.file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    if (!out) throw Error("cannot write cache file " + tmp);
  }
  std::filesystem::rename(tmp, entry.file);
  entry.file_sha256 = sha256_hex(bytes);
  return entry;
}

}  // namespace pedcon
