// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedcon/arith.hpp"
#include "pedcon/cli/commands.hpp"
#include "pedcon/eta.hpp"
#include "pedcon/modform.hpp"
#include "pedcon/newman.hpp"
#include "pedcon/partitions.hpp"
#include "pedcon/radu.hpp"
#include "pedcon/series.hpp"

using namespace pedcon;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  json evidence = json::object();  // deterministic; compared across runs
};

class Notes {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!text.empty()) text += "; ";
    text += (ok ? "" : "FAILED ") + what;
  }
  void info(const std::string& what) {
    if (!text.empty()) text += "; ";
    text += what;
  }
  bool pass = true;
  std::string text;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int prec = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(prec);
  s << x;
  return s.str();
}

Outcome criterion1() {
  Notes n;
  constexpr std::int64_t kN = 2000;
  const Series s = ped_series(kN);
  const auto oracle = partitions::ped_count_table(kN);
  std::int64_t first_bad = -1;
  for (std::int64_t i = 0; i <= kN; ++i) {
    if (s.coeff(i) != oracle[static_cast<std::size_t>(i)]) {
      first_bad = i;
      break;
    }
  }
  n.check(first_bad < 0, first_bad < 0 ? "ped_series == ped_count for n <= 2000"
                                        : "first mismatch at n = " + std::to_string(first_bad));
  return {n.pass, n.text, {{"first_mismatch", first_bad}}};
}

Outcome criterion2() {
  Notes n;
  constexpr std::int64_t kTerms = 200;
  const Series g = extract_progression(ped_series(9 * (kTerms - 1) + 7), 9, 7);
  const EtaExponents eq({{1, -11}, {2, 4}, {3, 6}, {4, 1}});
  const Series rhs = scale(eta_quotient_series(eq, kTerms - 1).series, 12);
  std::int64_t first_bad = -1;
  for (std::int64_t i = 0; i < kTerms; ++i) {
    if (g.coeff(i) != rhs.coeff(i)) {
      first_bad = i;
      break;
    }
  }
  n.check(first_bad < 0, first_bad < 0 ? "ped(9n+7) == 12 [q^n] f2^4 f3^6 f4 / f1^11 for n < 200"
                                        : "first mismatch at n = " + std::to_string(first_bad));
  return {n.pass, n.text, {{"first_mismatch", first_bad}}};
}

Outcome criterion3() {
  Notes n;
  const std::vector<std::int64_t> r{5, -4, 6, 1, 0, 0};
  const std::vector<std::pair<std::int64_t, std::vector<std::int64_t>>> expect{{4, {4, 9}}, {14, {14, 24}}};
  std::set<std::int64_t> proven_residues;
  json ev = json::array();
  for (const auto& [t, want] : expect) {
    const auto tuple = radu::RaduTuple::from_positional(25, 12, 60, t, r);
    const auto ds = radu::delta_star_check(tuple);
    n.check(ds.overall, "Delta* t=" + std::to_string(t));
    const auto pt = radu::p_t_set(25, 12, t, tuple.r);
    n.check(pt.members == want, "P(" + std::to_string(t) + ") exact");
    const auto vr = radu::radu_verify(tuple, {}, 16);
    n.check(vr.nu_floor == 53, "floor(nu) t=" + std::to_string(t) + " is " + vr.nu_floor.get_str() +
                                   " (nu = " + vr.nu.get_str() + "), expected 53");
    n.check(vr.status == radu::VerificationStatus::proven, "radu_verify t=" + std::to_string(t) + " " +
                                                               radu::to_string(vr.status));
    if (vr.status == radu::VerificationStatus::proven) proven_residues.insert(vr.Pt.begin(), vr.Pt.end());
    ev.push_back(radu::to_json(vr));
  }
  n.check(proven_residues == std::set<std::int64_t>{4, 9, 14, 24}, "proven residues {4,9,14,24}");

  // Coefficient check pushed to n <= 53 on every residue, against the
  // partition counting oracle: ped(9(25n + t') + 7) == 12 G(25n + t').
  constexpr std::int64_t kN = 53;
  const auto table = partitions::ped_count_table_mod(9 * (25 * kN + 24) + 7, 192);
  std::int64_t bad = 0;
  for (std::int64_t tp : {4, 9, 14, 24}) {
    for (std::int64_t i = 0; i <= kN; ++i) bad += table[static_cast<std::size_t>(9 * (25 * i + tp) + 7)] != 0;
  }
  n.check(bad == 0, "oracle: ped(225n + 9t' + 7) == 0 mod 192 for n <= 53 (" + std::to_string(bad) + " violations)");
  return {n.pass, n.text, {{"proofs", ev}, {"oracle_violations_to_53", bad}}};
}

Outcome criterion4() {
  Notes n;
  const auto fc = newman::make_family(newman::FamilyId::C192, 0, 0);
  json ev = json::object();
  for (auto route : {newman::Route::ped_series, newman::Route::radu}) {
    const auto rep = newman::verify_family(fc, 40, route);
    n.check(rep.passed && rep.violations == 0 && rep.checked > 0,
            newman::to_string(route) + ": " + std::to_string(rep.checked) + " checked, " +
                std::to_string(rep.violations) + " violations");
    ev[newman::to_string(route)] = to_json(rep);
  }
  return {n.pass, n.text, ev};
}

Outcome criterion5() {
  Notes n;
  json ev = json::array();
  for (auto [p, nmax] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 200}, {7, 200}, {11, 100}, {13, 100}}) {
    const auto rep = newman::recurrence_check(p, nmax);
    n.check(rep.passed && rep.violations == 0, "p=" + std::to_string(p) + " n<=" + std::to_string(nmax) + ": " +
                                                   std::to_string(rep.violations) + " violations");
    ev.push_back(to_json(rep));
  }
  return {n.pass, n.text, ev};
}

Outcome criterion6() {
  Notes n;
  json ev = json::array();
  auto run = [&](newman::FamilyId id, std::int64_t p, std::int64_t nmax) {
    const auto fc = newman::make_family(id, p, 0);
    const auto rep = newman::verify_family(fc, nmax, newman::Route::a_series);
    n.check(rep.passed && rep.violations == 0 && rep.checked > 0,
            newman::to_string(id) + " p=" + std::to_string(p) + ": " + std::to_string(rep.checked) + " checked, " +
                std::to_string(rep.violations) + " violations");
    ev.push_back({{"family", newman::to_json(fc)}, {"report", to_json(rep)}});
  };
  run(newman::FamilyId::T3_3_1, 19, 100);
  for (std::int64_t p : {5, 7}) {
    for (auto id : newman::selected_families(p)) run(id, p, 50);
  }
  return {n.pass, n.text, ev};
}

Outcome criterion7() {
  Notes n;
  json ev = json::object();
  const std::vector<std::vector<std::int64_t>> groups{{1, 2, 3, 4, 6, 8, 12, 24},
                                                      {9, 18, 36, 72},
                                                      {16, 48},
                                                      {144},
                                                      {32, 64, 96, 128, 192, 256, 384, 768},
                                                      {288, 576, 1152, 2304}};
  // Row values at k = 3 from the closed forms of the two tables.
  const std::vector<Rational> s2{21, 85, 0, 16, Rational(3, 4), Rational(19, 4)};
  const std::vector<Rational> s3{261, 37, 72, 16, Rational(75, 4), Rational(19, 4)};

  for (int p : {2, 3}) {
    const auto bq = modform::b_quotient(p, 3);
    const auto cert = modform::certify(bq);
    const Rational weight = p == 2 ? 4 : 27;
    const std::string tag = "B_{" + std::to_string(p) + ",3}";
    n.check(bq.level == 2304, tag + " level 2304");
    n.check(cert.weight == weight, tag + " weight " + cert.weight.get_str());
    n.check(cert.holomorphic, tag + " holomorphic");
    n.check(cert.cond_24_delta && cert.cond_24_N_over_delta, tag + " both 24-conditions");

    const auto table = modform::s_table(p, 3);
    const auto& want = p == 2 ? s2 : s3;
    bool rows_ok = table.size() == groups.size();
    std::size_t covered = 0;
    for (std::size_t i = 0; rows_ok && i < table.size(); ++i) {
      rows_ok = table[i].divisors == groups[i] && table[i].value == want[i];
      covered += table[i].divisors.size();
    }
    n.check(rows_ok && covered == 27, "S(" + std::to_string(p) + ") 6 rows over 27 divisors");

    std::size_t agree = 0;
    const auto divs = arith::divisors(2304);
    for (std::int64_t d : divs) agree += sgn(modform::s_indicator(p, 3, d)) == sgn(modform::cusp_order(bq, d));
    n.check(agree == divs.size(), "S(" + std::to_string(p) + ") sign agrees with cusp order at " +
                                      std::to_string(agree) + "/" + std::to_string(divs.size()));
    ev[tag] = modform::to_json(cert);
  }
  return {n.pass, n.text, ev};
}

Outcome criterion8() {
  Notes n;
  constexpr std::size_t kOrder = 5000;
  const auto bq = modform::b_quotient(2, 3);
  const std::int64_t weight = 4;
  const int chi5 = modform::character(bq, 5);
  const int chi7 = modform::character(bq, 7);
  const Series B = modform::build_B(2, 3, kOrder * 35 + 34);
  const Series f57 = truncate(modform::hecke_Tp(modform::hecke_Tp(B, 5, weight, chi5), 7, weight, chi7), kOrder);
  const Series f75 = truncate(modform::hecke_Tp(modform::hecke_Tp(B, 7, weight, chi7), 5, weight, chi5), kOrder);
  n.check(*B.modulus() == 16, "B_{2,3} mod 16");
  n.check(f57 == f75, "T5 T7 == T7 T5 to order 5000");

  std::mt19937_64 rng(0x5eed'2026);
  std::uniform_int_distribution<long> coef(0, 15);
  std::size_t linear_ok = 0, trials = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Integer> fa(2000), fb(2000);
    for (auto& c : fa) c = coef(rng);
    for (auto& c : fb) c = coef(rng);
    const Series f = Series::from_coefficients(fa, 16);
    const Series g = Series::from_coefficients(fb, 16);
    const Integer a = coef(rng), b = coef(rng);
    for (std::int64_t p : {5, 7, 11}) {
      const int chi = trial % 3 - 1;
      const Series lhs = modform::hecke_Tp(scale(f, a) + scale(g, b), p, weight, chi);
      const Series rhs = scale(modform::hecke_Tp(f, p, weight, chi), a) + scale(modform::hecke_Tp(g, p, weight, chi), b);
      ++trials;
      linear_ok += lhs == rhs;
    }
  }
  n.check(linear_ok == trials, "linearity " + std::to_string(linear_ok) + "/" + std::to_string(trials));
  return {n.pass, n.text, {{"commute", f57 == f75}, {"nonzero_count", f57.nonzero_count()}, {"linearity", linear_ok}}};
}

Outcome criterion9() {
  Notes n;
  const std::vector<std::int64_t> xs{1000, 10000, 100000};
  const Series G = newman::density_series("G", 72, xs.back());
  json ev = json::object();
  std::vector<newman::DensityReport> reps;
  for (std::int64_t M : {12, 24, 36}) {
    reps.push_back(newman::density_from_series(G, "G", M, 0, xs));
    ev[std::to_string(M)] = newman::to_json(reps.back());
    std::string counts;
    for (const auto& c : reps.back().checkpoints) counts += (counts.empty() ? "" : "/") + std::to_string(c.count);
    n.info("M=" + std::to_string(M) + " counts " + counts);
  }
  bool full = true;
  for (const auto& c : reps[0].checkpoints) full = full && c.count == c.X;
  n.check(full, "delta0(G,12) == 1 at every checkpoint");
  for (std::size_t i : {1, 2}) {
    const auto& cp = reps[i].checkpoints;
    n.check(cp.back().density >= cp.front().density - 0.02,
            "M=" + std::to_string(reps[i].modulus) + " " + fmt(cp.back().density, 5) + " >= " +
                fmt(cp.front().density, 5) + " - 0.02");
  }
  return {n.pass, n.text, ev};
}

std::string cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::vector<std::string> full{"--format", "json"};
  full.insert(full.end(), args.begin(), args.end());
  const int code = cli::run(full, out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    double limit_s;  // 0 means no runtime bound
  };
  const std::vector<Criterion> criteria{
      {1, "oracle equivalence", criterion1, 10},
      {2, "ped(9n+7) eta identity", criterion2, 0},
      {3, "Radu proof of ped(225n+B) mod 192 on m=25", criterion3, 60},
      {4, "ped(225n+B) == 0 mod 192, n <= 40", criterion4, 0},
      {5, "Newman recurrence", criterion5, 60},
      {6, "mod 24 families at k=0", criterion6, 300},
      {7, "B_{p,3} certification", criterion7, 0},
      {8, "Hecke properties", criterion8, 0},
      {9, "density trend", criterion9, 120},
  };

  bool all = true;
  std::vector<std::string> first_run;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), json::object()};
    }
    const double secs = seconds_since(t0);
    bool ok = o.pass;
    std::string detail = o.detail;
    if (c.limit_s > 0 && secs >= c.limit_s) {
      ok = false;
      detail += "; FAILED runtime limit " + fmt(c.limit_s, 0) + " s";
    }
    if (c.id >= 3) first_run.push_back(o.evidence.dump());
    all = all && ok;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.name << ": " << detail << " (" << fmt(secs) << " s)"
              << std::endl;
  }

  {
    const auto t0 = std::chrono::steady_clock::now();
    Notes n;
    std::size_t same = 0, total = 0;
    for (const auto& c : criteria) {
      if (c.id < 3) continue;
      std::string again;
      try {
        again = c.run().evidence.dump();
      } catch (const std::exception& e) {
        again = e.what();
      }
      same += again == first_run[total++];
    }
    n.check(same == total, "library reports identical for criteria 3-9 (" + std::to_string(same) + "/" +
                               std::to_string(total) + ")");
    const std::vector<std::vector<std::string>> commands{
        {"verify", "theorem-1-1"},
        {"verify", "conjecture192"},
        {"newman", "--p", "19", "--check", "family", "--nmax", "100"},
        {"eta-analyze", "--table", "S3", "--k", "3"},
        {"hecke", "--family-prime", "2", "--k", "3", "--primes", "5,7", "--order", "5000"},
        {"density", "--M", "24", "--X", "1000,10000,100000"},
    };
    std::size_t cli_same = 0;
    for (const auto& args : commands) cli_same += cli_json(args) == cli_json(args);
    n.check(cli_same == commands.size(), "CLI JSON identical (" + std::to_string(cli_same) + "/" +
                                             std::to_string(commands.size()) + ")");
    all = all && n.pass;
    std::cout << (n.pass ? "[PASS] " : "[FAIL] ") << "10 determinism: " << n.text << " (" << fmt(seconds_since(t0))
              << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
