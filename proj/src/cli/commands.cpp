#include "pedcon/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pedcon/arith.hpp"
#include "pedcon/modform.hpp"
#include "pedcon/newman.hpp"
#include "pedcon/partitions.hpp"
#include "pedcon/radu.hpp"
#include "pedcon/series_io.hpp"

namespace pedcon::cli {
namespace {

void absorb(RunReport& rr, const Report& r) {
  for (const auto& w : r.witnesses) {
    if (rr.witnesses.size() < Report::kMaxWitnesses) rr.witnesses.push_back(w);
  }
}

Status bound_status(bool passed) { return passed ? Status::verified_to_bound : Status::refuted; }

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

modform::ExponentMap parse_exponents(const std::vector<std::string>& items) {
  modform::ExponentMap out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw PreconditionError("eta-analyze: exponent '" + item + "' is not of the form delta:r");
    std::int64_t delta = 0;
    std::int64_t r = 0;
    try {
      std::size_t used = 0;
      delta = std::stoll(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const std::string rs = item.substr(colon + 1);
      r = std::stoll(rs, &used);
      if (used != rs.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw PreconditionError("eta-analyze: cannot parse exponent '" + item + "'");
    }
    if (delta < 1) throw PreconditionError("eta-analyze: delta must be positive");
    if (out.count(delta)) throw PreconditionError("eta-analyze: delta " + std::to_string(delta) + " given twice");
    if (r != 0) out[delta] = r;
  }
  return out;
}

nlohmann::json exponents_json(const modform::ExponentMap& e) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [d, r] : e) j[std::to_string(d)] = r;
  return j;
}

RunReport certificate_report(const modform::EtaQuotient& eq) {
  RunReport rr;
  const auto cert = modform::certify(eq);
  rr.results["quotient"] = modform::to_json(eq);
  rr.results["certificate"] = modform::to_json(cert);
  if (cert.weight_integral) {
    nlohmann::json chi = nlohmann::json::array();
    for (std::int64_t d = 3; chi.size() < 10 && d < 1000; d += 2) {
      if (arith::is_prime(static_cast<std::uint64_t>(d)) && arith::gcd(d, 2 * eq.level) == 1) {
        chi.push_back({{"d", d}, {"chi", modform::character(eq, d)}});
      }
    }
    rr.results["character_values"] = chi;
  }
  for (const auto& [d, ord] : cert.cusp_orders) {
    if (ord < 0) {
      rr.witnesses.push_back({d, ord.get_num(), "order " + ord.get_str() + " at the cusps c/" + std::to_string(d)});
    }
  }
  if (!cert.weight_integral) rr.witnesses.push_back({0, cert.weight.get_num(), "weight " + cert.weight.get_str() + " is not an integer"});
  if (!cert.cond_24_delta) rr.witnesses.push_back({0, cert.sum_delta_r, "sum delta r_delta is not 0 mod 24"});
  if (!cert.cond_24_N_over_delta) rr.witnesses.push_back({0, cert.sum_N_over_delta_r, "sum (N/delta) r_delta is not 0 mod 24"});
  rr.status = cert.holomorphic ? Status::proven : Status::refuted;
  return rr;
}

}  // namespace

Context::Context() : artifacts_(std::make_shared<std::vector<Artifact>>()) {}

Context::Context(std::optional<std::filesystem::path> cache_dir) : Context() {
  if (cache_dir) cache_ = std::make_unique<SeriesCache>(*cache_dir);
}

Context::~Context() = default;

SeriesSource Context::source() {
  if (!cache_) return {};
  SeriesCache* cache = cache_.get();
  auto arts = artifacts_;
  return [cache, arts](const EtaExponents& eq, std::size_t order, Modulus modulus) {
    auto entry = cache->get_or_build(eq, order, modulus);
    arts->push_back({entry.file.string(), entry.file_sha256, entry.loaded});
    return std::move(entry.series);
  };
}

std::vector<Artifact> Context::take_artifacts() {
  std::vector<Artifact> out;
  out.swap(*artifacts_);
  return out;
}

RunReport cmd_ped(const PedOptions& o) {
  RunReport rr;
  rr.command = "ped";
  rr.parameters = {{"nmax", o.nmax}, {"exact", o.exact || !o.modulus}, {"allow_slow", o.allow_slow}};
  rr.parameters["modulus"] = o.modulus ? nlohmann::json(*o.modulus) : nlohmann::json(nullptr);
  if (o.nmax < 0) throw PreconditionError("ped: --nmax must be nonnegative");
  if (o.exact && o.modulus) throw PreconditionError("ped: --exact and --modulus are exclusive");

  Series s;
  if (o.modulus) {
    if (*o.modulus < 2) throw PreconditionError("ped: modulus must be at least 2");
    if (o.nmax > static_cast<std::int64_t>(newman::kPedRouteBudget)) throw BudgetError("ped: nmax beyond the modular budget");
    s = ped_series(static_cast<std::size_t>(o.nmax), *o.modulus);
  } else {
    const std::int64_t cap = o.allow_slow ? partitions::kExactBudget : kPedExactCliBudget;
    if (o.nmax > cap) {
      throw BudgetError("ped: exact table to n = " + std::to_string(o.nmax) + " exceeds the limit of " + std::to_string(cap) +
                        (o.allow_slow ? "" : "; pass --allow-slow to raise it"));
    }
    s = ped_series(static_cast<std::size_t>(o.nmax));
  }

  Report check;
  check.name = "oracle cross-check";
  if (o.nmax <= kPedOracleLimit) {
    if (o.modulus && *o.modulus < (1ULL << 31)) {
      const auto oracle = partitions::ped_count_table_mod(o.nmax, static_cast<std::uint32_t>(*o.modulus));
      for (std::int64_t n = 0; n <= o.nmax; ++n) {
        ++check.checked;
        if (s.residue(static_cast<std::size_t>(n)) != oracle[static_cast<std::size_t>(n)]) {
          check.record_violation({n, s.coeff(n), "series disagrees with the counting oracle"});
        }
      }
    } else if (!o.modulus) {
      const auto oracle = partitions::ped_count_table(o.nmax);
      for (std::int64_t n = 0; n <= o.nmax; ++n) {
        ++check.checked;
        if (s.coeff(n) != oracle[static_cast<std::size_t>(n)]) {
          check.record_violation({n, s.coeff(n), "series disagrees with the counting oracle"});
        }
      }
    }
  }
  rr.results["oracle_checked"] = check.checked;
  rr.results["oracle_violations"] = check.violations;
  absorb(rr, check);

  Table t{{"n", o.modulus ? "ped(n) mod m" : "ped(n)"}, {}};
  for (std::int64_t n = 0; n <= o.nmax; ++n) t.rows.push_back({std::to_string(n), s.coeff(n).get_str()});
  rr.table = std::move(t);
  rr.status = bound_status(check.passed);
  return rr;
}

RunReport cmd_verify(const VerifyOptions& o, Context& ctx) {
  RunReport rr;
  rr.command = "verify " + o.target;
  const SeriesSource src = ctx.source();

  if (o.target == "conjecture192") {
    const std::int64_t nmax = o.nmax.value_or(40);
    const std::string route = o.route.empty() ? "both" : o.route;
    rr.parameters = {{"nmax", nmax}, {"route", route}};
    if (route != "both" && route != "ped-series" && route != "radu") {
      throw PreconditionError("verify conjecture192: --route must be both, ped-series or radu");
    }
    const auto fc = newman::make_family(newman::FamilyId::C192, 0, 0);
    bool passed = true;
    if (route != "radu") {
      const auto rep = newman::verify_family(fc, nmax, newman::Route::ped_series, std::nullopt, src);
      rr.results["ped_series"] = to_json(rep);
      passed = passed && rep.passed;
      absorb(rr, rep);
    }
    if (route != "ped-series") {
      const auto rep = newman::verify_family(fc, nmax, newman::Route::radu, std::nullopt, src);
      rr.results["radu"] = to_json(rep);
      rr.results["proven_for_all_n"] = rep.details.value("proven_for_all_n", false);
      passed = passed && rep.passed;
      absorb(rr, rep);
    }
    rr.status = bound_status(passed);
  } else if (o.target == "theorem-1-1") {
    rr.parameters = {{"u", 16}};
    nlohmann::json proofs = nlohmann::json::array();
    bool all_proven = true;
    bool refuted = false;
    for (std::int64_t t : {4, 14}) {
      const auto tuple = radu::RaduTuple::from_positional(25, 12, 60, t, std::vector<std::int64_t>{5, -4, 6, 1, 0, 0});
      const auto vr = radu::radu_verify(tuple, {}, 16, 16, src);
      proofs.push_back(radu::to_json(vr));
      all_proven = all_proven && vr.status == radu::VerificationStatus::proven;
      if (vr.witness) {
        refuted = true;
        rr.witnesses.push_back(*vr.witness);
      }
    }
    rr.results["proofs"] = proofs;
    rr.results["residues"] = {4, 9, 14, 24};
    rr.status = refuted ? Status::refuted : all_proven ? Status::proven : Status::error;
    if (rr.status == Status::error) rr.error = "a structural stage of the criterion failed";
  } else if (o.target == "family") {
    const auto id = newman::parse_family(o.family);
    if (!id) throw PreconditionError("verify family: unknown --id '" + o.family + "'");
    const std::int64_t nmax = o.nmax.value_or(50);
    rr.parameters = {{"id", o.family}, {"p", o.p}, {"k", o.k}, {"nmax", nmax}, {"j", o.j},
                     {"route", o.route.empty() ? "automatic" : o.route}};
    newman::Route route = newman::Route::automatic;
    if (o.route == "a-series") route = newman::Route::a_series;
    else if (o.route == "ped-series") route = newman::Route::ped_series;
    else if (o.route == "radu") route = newman::Route::radu;
    else if (!o.route.empty() && o.route != "automatic") throw PreconditionError("verify family: unknown --route '" + o.route + "'");
    const auto fc = newman::make_family(*id, o.p, o.k);
    const auto jset = o.j.empty() ? std::nullopt : std::optional<std::vector<std::int64_t>>(o.j);
    const auto rep = newman::verify_family(fc, nmax, route, jset, src);
    rr.results["report"] = to_json(rep);
    absorb(rr, rep);
    rr.status = bound_status(rep.passed);
  } else {
    throw PreconditionError("verify: unknown target '" + o.target + "' (conjecture192, theorem-1-1 or family)");
  }
  rr.artifacts = ctx.take_artifacts();
  return rr;
}

RunReport cmd_radu(const RaduOptions& o, Context& ctx) {
  RunReport rr;
  rr.command = "radu";
  rr.parameters = {{"m", o.m}, {"M", o.M}, {"N", o.N}, {"t", o.t}, {"r", o.r}, {"rprime", o.rprime}, {"u", o.u},
                   {"margin", o.margin}};
  const auto tuple = radu::RaduTuple::from_positional(o.m, o.M, o.N, o.t, o.r);
  radu::ExponentMap rprime;
  if (!o.rprime.empty()) {
    if (o.N < 1) throw PreconditionError("radu: N must be positive");
    const auto divs = arith::divisors(o.N);
    if (o.rprime.size() != divs.size()) {
      throw PreconditionError("radu: --rprime needs " + std::to_string(divs.size()) + " entries, one per divisor of N");
    }
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (o.rprime[i] != 0) rprime[divs[i]] = o.rprime[i];
    }
  }
  const auto vr = radu::radu_verify(tuple, rprime, o.u, o.margin, ctx.source());
  rr.results = radu::to_json(vr);
  if (vr.witness) rr.witnesses.push_back(*vr.witness);
  switch (vr.status) {
    case radu::VerificationStatus::proven: rr.status = Status::proven; break;
    case radu::VerificationStatus::refuted: rr.status = Status::refuted; break;
    case radu::VerificationStatus::precondition_failed:
      rr.status = Status::error;
      rr.error = "precondition failed at stage " + vr.failed_stage;
      break;
  }
  rr.artifacts = ctx.take_artifacts();
  return rr;
}

RunReport cmd_eta_analyze(const EtaOptions& o) {
  if (!o.table.empty()) {
    const int p = o.table == "S2" ? 2 : o.table == "S3" ? 3 : 0;
    if (p == 0) throw PreconditionError("eta-analyze: --table must be S2 or S3");
    RunReport rr;
    rr.command = "eta-analyze";
    rr.parameters = {{"table", o.table}, {"k", o.k}};
    const auto bq = modform::b_quotient(p, o.k);
    Table t{{"d", "indicator"}, {}};
    bool nonneg = true;
    bool signs_agree = true;
    for (const auto& row : modform::s_table(p, o.k)) {
      std::string ds;
      for (std::int64_t d : row.divisors) {
        ds += (ds.empty() ? "" : " ") + std::to_string(d);
        const int s1 = sgn(modform::s_indicator(p, o.k, d));
        const int s2 = sgn(modform::cusp_order(bq, d));
        if (s1 != s2) {
          signs_agree = false;
          rr.witnesses.push_back({d, s1, "indicator sign differs from the cusp order sign " + std::to_string(s2)});
        }
      }
      if (row.value < 0) {
        nonneg = false;
        rr.witnesses.push_back({row.divisors.front(), row.value.get_num(), "negative indicator " + row.value.get_str()});
      }
      t.rows.push_back({ds, row.value.get_str()});
    }
    rr.table = std::move(t);
    rr.results["quotient"] = modform::to_json(bq);
    rr.results["all_nonnegative"] = nonneg;
    rr.results["signs_agree_with_cusp_orders"] = signs_agree;
    rr.status = nonneg && signs_agree ? Status::proven : Status::refuted;
    return rr;
  }

  modform::EtaQuotient eq;
  nlohmann::json params;
  if (o.B) {
    if (!o.exps.empty() || o.level) throw PreconditionError("eta-analyze: --B excludes --exp and --level");
    eq = modform::b_quotient(*o.B, o.k);
    params = {{"B", *o.B}, {"k", o.k}};
  } else {
    const auto exps = parse_exponents(o.exps);
    if (exps.empty()) throw PreconditionError("eta-analyze: give --exp delta:r (at least one nonzero), --B or --table");
    eq.exponents = exps;
    eq.level = o.level ? *o.level : modform::min_level(exps);
    params = {{"exp", exponents_json(exps)}, {"level", o.level ? nlohmann::json(*o.level) : nlohmann::json("minimal")}};
  }
  RunReport rr = certificate_report(eq);
  rr.command = "eta-analyze";
  rr.parameters = params;
  return rr;
}

RunReport cmd_newman(const NewmanOptions& o, Context& ctx) {
  RunReport rr;
  rr.command = "newman";
  rr.parameters = {{"p", o.p}, {"check", o.check}, {"family", o.family}, {"k", o.k}, {"nmax", o.nmax}, {"j", o.j},
                   {"route", o.route}};
  const auto w = newman::omega(o.p);
  rr.results["omega"] = to_json(w);
  if (o.check == "recurrence") {
    const auto rep = newman::recurrence_check(o.p, o.nmax);
    rr.results["recurrence"] = to_json(rep);
    absorb(rr, rep);
    rr.status = bound_status(rep.passed);
  } else if (o.check == "family") {
    std::vector<newman::FamilyId> ids;
    if (o.family.empty()) {
      ids = newman::selected_families(o.p);
    } else {
      const auto id = newman::parse_family(o.family);
      if (!id) throw PreconditionError("newman: unknown --family '" + o.family + "'");
      ids.push_back(*id);
    }
    newman::Route route = newman::Route::automatic;
    if (o.route == "a-series") route = newman::Route::a_series;
    else if (o.route == "ped-series") route = newman::Route::ped_series;
    else if (o.route != "automatic") throw PreconditionError("newman: unknown --route '" + o.route + "'");
    const auto jset = o.j.empty() ? std::nullopt : std::optional<std::vector<std::int64_t>>(o.j);
    nlohmann::json fams = nlohmann::json::array();
    bool passed = true;
    for (auto id : ids) {
      const auto fc = newman::make_family(id, o.p, o.k);
      const bool has_j = fc.progressions.size() > 1;
      const auto rep = newman::verify_family(fc, o.nmax, route, has_j ? jset : std::nullopt, ctx.source());
      fams.push_back(to_json(rep));
      passed = passed && rep.passed;
      absorb(rr, rep);
    }
    rr.results["families"] = fams;
    rr.status = bound_status(passed);
  } else {
    throw PreconditionError("newman: --check must be recurrence or family");
  }
  rr.artifacts = ctx.take_artifacts();
  return rr;
}

RunReport cmd_density(const DensityOptions& o, Context& ctx) {
  RunReport rr;
  rr.command = "density";
  rr.parameters = {{"M", o.M}, {"X", o.X}, {"r", o.r}, {"series", o.series}};
  const auto d = newman::density(o.series, o.M, o.r, o.X, ctx.source());
  rr.results = newman::to_json(d);
  Table t{{"X", "count", "density"}, {}};
  for (const auto& c : d.checkpoints) t.rows.push_back({std::to_string(c.X), std::to_string(c.count), fixed6(c.density)});
  rr.table = std::move(t);
  rr.status = Status::evidence_only;
  rr.artifacts = ctx.take_artifacts();
  return rr;
}

RunReport cmd_hecke(const HeckeOptions& o) {
  RunReport rr;
  rr.command = "hecke";
  rr.parameters = {{"family_prime", o.family_prime}, {"k", o.k}, {"primes", o.primes}, {"order", o.order}};
  if (o.primes.empty()) throw PreconditionError("hecke: give at least one prime");
  const auto bq = modform::b_quotient(o.family_prime, o.k);
  const auto cert = modform::certify(bq);
  const std::int64_t weight = cert.weight.get_num().get_si();

  std::size_t need = o.order;
  for (std::int64_t p : o.primes) {
    if (p < 5 || !arith::is_prime(static_cast<std::uint64_t>(p))) throw PreconditionError("hecke: primes must be >= 5");
    need = static_cast<std::size_t>(arith::checked_mul(static_cast<std::int64_t>(need), p) + p - 1);
  }
  if (need > 20'000'000) throw BudgetError("hecke: the source expansion would exceed 2e7 coefficients");
  const Series B = modform::build_B(o.family_prime, o.k, need);

  auto apply = [&](const std::vector<std::int64_t>& ps) {
    Series f = B;
    for (std::int64_t p : ps) f = modform::hecke_Tp(f, p, weight, modform::character(bq, p));
    return truncate(f, o.order);
  };
  const Series forward = apply(o.primes);
  std::vector<std::int64_t> rev(o.primes.rbegin(), o.primes.rend());
  const Series backward = apply(rev);
  const bool commute = forward == backward;
  if (!commute) {
    for (std::size_t n = 0; n <= o.order && rr.witnesses.size() < 16; ++n) {
      if (forward.coeff(static_cast<std::int64_t>(n)) != backward.coeff(static_cast<std::int64_t>(n))) {
        rr.witnesses.push_back({static_cast<std::int64_t>(n), forward.coeff(static_cast<std::int64_t>(n)), "orders disagree"});
      }
    }
  }

  // For distinct primes and n coprime to all of them the composite operator
  // reads B at (p1 ... pr) n.
  std::int64_t prod = 1;
  for (std::int64_t p : o.primes) prod *= p;
  std::vector<std::int64_t> sorted = o.primes;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  bool transform = true;
  std::uint64_t transform_checked = 0;
  if (distinct) {
    for (std::size_t n = 1; n <= o.order; ++n) {
      if (arith::gcd(static_cast<std::int64_t>(n), prod) != 1) continue;
      ++transform_checked;
      const auto idx = static_cast<std::int64_t>(n) * prod;
      if (forward.coeff(static_cast<std::int64_t>(n)) != B.coeff(idx)) {
        transform = false;
        if (rr.witnesses.size() < 16) rr.witnesses.push_back({static_cast<std::int64_t>(n), forward.coeff(static_cast<std::int64_t>(n)), "differs from B(p1...pr n)"});
      }
    }
  }

  nlohmann::json support = nlohmann::json::array();
  for (std::size_t n : forward.support()) {
    if (support.size() >= 12) break;
    support.push_back(n);
  }
  rr.results = {{"weight", weight},
                {"modulus", *B.modulus()},
                {"source_order", need},
                {"commute", commute},
                {"index_transform_holds", transform},
                {"index_transform_checked", transform_checked},
                {"nonzero_count", forward.nonzero_count()},
                {"first_support", support}};
  rr.status = commute && transform ? Status::verified_to_bound : Status::refuted;
  return rr;
}

RunReport cmd_explore(const ExploreOptions& o, Context& ctx) {
  RunReport rr;
  rr.command = "explore-conjecture";
  rr.parameters = {{"p", o.p}, {"t", o.t}, {"nmax", o.nmax}};
  const auto rep = newman::explore_final_conjecture(o.p, o.t, o.nmax, ctx.source());
  rr.results["report"] = to_json(rep);
  absorb(rr, rep);
  rr.status = rep.passed ? Status::evidence_only : Status::refuted;
  rr.artifacts = ctx.take_artifacts();
  return rr;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pedcon: q-series verification of congruences for ped(n)", "pedcon"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  std::string cache_dir;
  bool timings = false;
  app.add_option("--format", format, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--cache-dir", cache_dir, "directory for cached series expansions");
  app.add_flag("--timings", timings, "include wall-clock timings in the report");

  PedOptions ped;
  auto* c_ped = app.add_subcommand("ped", "table of ped(n)");
  c_ped->add_option("--nmax", ped.nmax)->required();
  c_ped->add_option("--modulus", ped.modulus);
  c_ped->add_flag("--exact", ped.exact);
  c_ped->add_flag("--allow-slow", ped.allow_slow);

  VerifyOptions ver;
  std::int64_t ver_nmax = -1;
  auto* c_ver = app.add_subcommand("verify", "verify a stated congruence");
  c_ver->add_option("target", ver.target, "conjecture192, theorem-1-1 or family")->required();
  c_ver->add_option("--nmax", ver_nmax);
  c_ver->add_option("--id", ver.family);
  c_ver->add_option("--p", ver.p);
  c_ver->add_option("--k", ver.k);
  c_ver->add_option("--j", ver.j)->delimiter(',');
  c_ver->add_option("--route", ver.route);

  RaduOptions rad;
  auto* c_rad = app.add_subcommand("radu", "run Radu's criterion on a tuple");
  c_rad->add_option("--m", rad.m)->required();
  c_rad->add_option("--M", rad.M)->required();
  c_rad->add_option("--N", rad.N)->required();
  c_rad->add_option("--t", rad.t)->required();
  c_rad->add_option("--r", rad.r, "exponents over the divisors of M")->required()->delimiter(',');
  c_rad->add_option("--rprime", rad.rprime)->delimiter(',');
  c_rad->add_option("--u", rad.u);
  c_rad->add_option("--margin", rad.margin);

  EtaOptions eta;
  int eta_B = 0;
  std::int64_t eta_level = 0;
  auto* c_eta = app.add_subcommand("eta-analyze", "certify an eta quotient as a modular form");
  c_eta->add_option("--level", eta_level);
  c_eta->add_option("--exp", eta.exps, "delta:r")->delimiter(',');
  c_eta->add_option("--B", eta_B, "analyse B_{p,k} for p = 2 or 3");
  c_eta->add_option("--k", eta.k);
  c_eta->add_option("--table", eta.table, "S2 or S3");

  NewmanOptions nw;
  auto* c_nw = app.add_subcommand("newman", "Newman recurrence and congruence families");
  c_nw->add_option("--p", nw.p)->required();
  c_nw->add_option("--check", nw.check);
  c_nw->add_option("--family", nw.family);
  c_nw->add_option("--k", nw.k);
  c_nw->add_option("--nmax", nw.nmax);
  c_nw->add_option("--j", nw.j)->delimiter(',');
  c_nw->add_option("--route", nw.route);

  DensityOptions den;
  auto* c_den = app.add_subcommand("density", "arithmetic density of coefficients");
  c_den->add_option("--M", den.M);
  c_den->add_option("--X", den.X)->delimiter(',');
  c_den->add_option("--r", den.r);
  c_den->add_option("--series", den.series, "G, ped, a or zero");

  HeckeOptions hk;
  auto* c_hk = app.add_subcommand("hecke", "Hecke operators on B_{p,k}");
  c_hk->add_option("--family-prime", hk.family_prime);
  c_hk->add_option("--k", hk.k);
  c_hk->add_option("--primes", hk.primes)->delimiter(',');
  c_hk->add_option("--order", hk.order);

  ExploreOptions ex;
  auto* c_ex = app.add_subcommand("explore-conjecture", "numerical evidence for the final conjecture");
  c_ex->add_option("--p", ex.p);
  c_ex->add_option("--t", ex.t);
  c_ex->add_option("--nmax", ex.nmax);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pedcon: " << e.what() << "\n" << app.help();
    return 2;
  }

  const Format fmt = *parse_format(format);
  const auto start = std::chrono::steady_clock::now();
  RunReport rr;
  try {
    Context ctx(cache_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(cache_dir));
    if (c_ped->parsed()) {
      rr = cmd_ped(ped);
    } else if (c_ver->parsed()) {
      if (ver_nmax >= 0) ver.nmax = ver_nmax;
      rr = cmd_verify(ver, ctx);
    } else if (c_rad->parsed()) {
      rr = cmd_radu(rad, ctx);
    } else if (c_eta->parsed()) {
      if (c_eta->count("--B")) eta.B = eta_B;
      if (c_eta->count("--level")) eta.level = eta_level;
      rr = cmd_eta_analyze(eta);
    } else if (c_nw->parsed()) {
      rr = cmd_newman(nw, ctx);
    } else if (c_den->parsed()) {
      rr = cmd_density(den, ctx);
    } else if (c_hk->parsed()) {
      rr = cmd_hecke(hk);
    } else if (c_ex->parsed()) {
      rr = cmd_explore(ex, ctx);
    }
  } catch (const std::exception& e) {
    const std::string name = app.get_subcommands().empty() ? "pedcon" : app.get_subcommands().front()->get_name();
    rr = RunReport{};
    rr.command = name;
    rr.status = Status::error;
    rr.error = e.what();
    err << "pedcon: " << e.what() << '\n';
  }
  if (timings) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rr.timings = nlohmann::json{{"total_ms", ms}};
  }
  out << format_report(rr, fmt);
  return exit_code(rr.status);
}

}  // namespace pedcon::cli
