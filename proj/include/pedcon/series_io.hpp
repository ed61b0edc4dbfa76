#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pedcon/eta.hpp"
#include "pedcon/series.hpp"

namespace pedcon {

/// Text format:
///   order=<N>
///   modulus=<m|none>
/// followed by N + 1 lines, one decimal coefficient each.
void write_series(std::ostream& out, const Series& s);

/// Parses the format above. Throws PreconditionError on malformed input.
Series read_series(std::istream& in);

std::string sha256_hex(std::string_view bytes);

/// Checks `spots` coefficients of s against the logarithmic-derivative
/// identity n F(n) = sum_{j=1}^{n} c(j) F(n - j), where
/// c(j) = -sum_{d | j} d r_d sigma(j / d). The identity holds over Z and
/// therefore modulo m, and uses none of the code that built s.
bool spot_check_eta_series(const Series& s, const EtaExponents& eq, std::size_t spots = 64);

/// Disk cache of eta-quotient expansions keyed by the SHA-256 of
/// (construction, order, modulus). Loaded entries are accepted only after a
/// 64-point spot check; a failing or unreadable file is rebuilt.
class SeriesCache {
 public:
  struct Entry {
    Series series;
    std::filesystem::path file;
    std::string file_sha256;
    bool loaded = false;
  };

  explicit SeriesCache(std::filesystem::path dir);

  Entry get_or_build(const EtaExponents& eq, std::size_t order, Modulus modulus);

  static std::string cache_key(const EtaExponents& eq, std::size_t order, const Modulus& modulus);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace pedcon
