#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pedcon/cli/run_report.hpp"
#include "pedcon/eta.hpp"

namespace pedcon {
class SeriesCache;
}

namespace pedcon::cli {

inline constexpr std::int64_t kPedExactCliBudget = 2000;
inline constexpr std::int64_t kPedOracleLimit = 2000;

/// Per-run state shared by the commands: the optional disk cache and the
/// artifacts it produced.
class Context {
 public:
  Context();
  explicit Context(std::optional<std::filesystem::path> cache_dir);
  ~Context();

  /// Empty when no cache directory was given.
  SeriesSource source();

  std::vector<Artifact> take_artifacts();

 private:
  std::unique_ptr<SeriesCache> cache_;
  std::shared_ptr<std::vector<Artifact>> artifacts_;
};

struct PedOptions {
  std::int64_t nmax = 10;
  std::optional<std::uint64_t> modulus;
  bool exact = false;
  bool allow_slow = false;
};

struct VerifyOptions {
  std::string target;  // conjecture192 | theorem-1-1 | family
  std::optional<std::int64_t> nmax;
  std::string family;
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::vector<std::int64_t> j;
  std::string route;  // empty selects the default for the target
};

struct RaduOptions {
  std::int64_t m = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::int64_t t = 0;
  std::vector<std::int64_t> r;       // positional over the divisors of M
  std::vector<std::int64_t> rprime;  // positional over the divisors of N; empty means zero
  std::uint64_t u = 16;
  std::size_t margin = 16;
};

struct EtaOptions {
  std::optional<std::int64_t> level;
  std::vector<std::string> exps;  // "delta:r"
  std::optional<int> B;
  std::int64_t k = 3;
  std::string table;  // S2 | S3
};

struct NewmanOptions {
  std::int64_t p = 5;
  std::string check = "recurrence";  // recurrence | family
  std::string family;                // empty selects by the parity of omega(p)
  std::int64_t k = 0;
  std::int64_t nmax = 100;
  std::vector<std::int64_t> j;
  std::string route = "automatic";
};

struct DensityOptions {
  std::int64_t M = 24;
  std::vector<std::int64_t> X{1000, 10000, 100000};
  std::int64_t r = 0;
  std::string series = "G";
};

struct HeckeOptions {
  int family_prime = 2;
  std::int64_t k = 3;
  std::vector<std::int64_t> primes{5, 7};
  std::size_t order = 5000;
};

struct ExploreOptions {
  std::int64_t p = 5;
  std::int64_t t = 5;
  std::int64_t nmax = 40;
};

RunReport cmd_ped(const PedOptions& o);
RunReport cmd_verify(const VerifyOptions& o, Context& ctx);
RunReport cmd_radu(const RaduOptions& o, Context& ctx);
RunReport cmd_eta_analyze(const EtaOptions& o);
RunReport cmd_newman(const NewmanOptions& o, Context& ctx);
RunReport cmd_density(const DensityOptions& o, Context& ctx);
RunReport cmd_hecke(const HeckeOptions& o);
RunReport cmd_explore(const ExploreOptions& o, Context& ctx);

/// Full command line entry point; args excludes the program name. Returns
/// the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pedcon::cli
