// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command-line front end. Needs nlohmann/json and CLI11 on the include path.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>
#include <variant>
#include <string>
#include <vector>

#include "supercong/bernoulli.hpp"
#include "supercong/scanners.hpp"
#include "supercong/seqsums.hpp"
#include "supercong/verify.hpp"

namespace supercong::cli {

using json = nlohmann::ordered_json;

enum class Subcommand { verify, scan, search, selftest };
enum class Format { jsonl, csv, human };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

NLOHMANN_JSON_SERIALIZE_ENUM(Subcommand, {{Subcommand::verify, "verify"},
                                          {Subcommand::scan, "scan"},
                                          {Subcommand::search, "search"},
                                          {Subcommand::selftest, "selftest"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Format, {{Format::jsonl, "jsonl"}, {Format::csv, "csv"}, {Format::human, "human"}})

struct RunConfig {
  Subcommand subcommand = Subcommand::verify;
  std::vector<std::string> statements{"all"};
  std::uint64_t prime_lo = 5;
  std::uint64_t prime_hi = 499;
  unsigned guard = 2;
  Format format = Format::jsonl;
  std::string output;  // empty: stdout
  unsigned workers = 0;  // 0: one per core
  int claim_shift = 0;
  std::string bernoulli_cache;
  bool timing = false;
  // policy
  unsigned m_max = 12;
  unsigned n_max = 10;
  unsigned s_cap = 50;
  // scan
  std::string target = "conj1_1";
  std::string family = "both";
  std::vector<std::int64_t> m;
  std::vector<std::int64_t> r;
  std::uint64_t pmax = 1000;
  // search
  std::uint64_t nmin = 4;
  std::uint64_t nmax = 120;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  ParamPolicy policy() const {
    ParamPolicy p;
    p.m_max = m_max;
    p.n_max = n_max;
    p.s_cap = s_cap;
    return p;
  }
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(RunConfig, subcommand, statements, prime_lo, prime_hi, guard, format,
                                                output, workers, claim_shift, bernoulli_cache, timing, m_max, n_max,
                                                s_cap, target, family, m, r, pmax, nmin, nmax)

inline std::string to_json_string(const RunConfig& c) { return nlohmann::json(c).dump(); }
inline RunConfig from_json_string(const std::string& s) { return nlohmann::json::parse(s).get<RunConfig>(); }

/// "a..b" or a single number.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto to_u64 = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw error(errc::usage, "bad range '" + text + "'");
    }
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = to_u64(text);
    return {v, v};
  }
  const auto lo = to_u64(text.substr(0, dots)), hi = to_u64(text.substr(dots + 2));
  if (lo > hi) throw error(errc::usage, "empty range '" + text + "'");
  return {lo, hi};
}

inline std::vector<StatementId> resolve_statements(const std::vector<std::string>& names) {
  std::vector<StatementId> out;
  for (const auto& n : names) {
    if (n == "all") return all_statements();
    auto id = parse_statement(n);
    if (!id) throw error(errc::usage, "unknown statement '" + n + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw error(errc::usage, "no statements selected");
  return out;
}

inline std::vector<Family> resolve_families(const std::string& f) {
  if (f == "plus") return {Family::plus};
  if (f == "minus") return {Family::minus};
  if (f == "both") return {Family::plus, Family::minus};
  throw error(errc::usage, "family must be plus, minus or both");
}

// ---------------------------------------------------------------------------
// Records

inline json params_json(const Params& q) {
  json j;
  j["p"] = q.p;
  if (q.m) j["m"] = *q.m;
  if (q.n) j["n"] = *q.n;
  if (q.s) j["s"] = *q.s;
  if (q.k) j["k"] = *q.k;
  if (q.part) j["part"] = *q.part;
  return j;
}

inline json report_json(const CongruenceReport& r, bool timing) {
  json j;
  j["statement_id"] = std::string(statement(r.id).name);
  j["params"] = params_json(r.params);
  j["claimed"] = r.claimed;
  j["observed_kind"] = r.computed.is_exact() ? "exact" : "at_least";
  j["observed_amount"] = r.computed.amount;
  j["pass"] = r.pass;
  j["working_precision"] = r.working_precision;
  j["observed"] = r.computed.to_string();
  j["residual"] = r.residual.value().get_str();
  j["p"] = r.params.p;
  j["c"] = r.working_precision;
  if (timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

inline json scan_json(const ScanRecord& r) {
  json j;
  j["target"] = to_string(r.target);
  j["base"] = r.base;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["required"] = r.required;
  j["observed_kind"] = r.observed.is_exact() ? "exact" : "at_least";
  j["observed_amount"] = r.observed.amount;
  j["observed"] = r.observed.to_string();
  j["verdict"] = to_string(r.verdict);
  j["working_precision"] = r.working_precision;
  j["residual"] = r.residual;
  if (r.easy_layer) j["easy_layer"] = *r.easy_layer;
  if (r.informational) j["informational"] = true;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string opt_field(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }

inline constexpr const char* kReportCsvHeader =
    "statement_id,p,m,n,s,k,part,claimed,observed,pass,working_precision,residual";

inline std::string report_csv(const CongruenceReport& r) {
  std::ostringstream o;
  o << statement(r.id).name << ',' << r.params.p << ',' << opt_field(r.params.m) << ',' << opt_field(r.params.n)
    << ',' << opt_field(r.params.s) << ',' << opt_field(r.params.k) << ',' << opt_field(r.params.part) << ','
    << r.claimed << ',' << r.computed.to_string() << ',' << (r.pass ? "true" : "false") << ','
    << r.working_precision << ',' << r.residual.value().get_str();
  return o.str();
}

inline constexpr const char* kScanCsvHeader =
    "target,base,params,required,observed,verdict,working_precision,residual,easy_layer,informational";

inline std::string scan_csv(const ScanRecord& r) {
  std::ostringstream o;
  std::string params;
  for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + std::to_string(v);
  o << to_string(r.target) << ',' << r.base << ',' << params << ',' << r.required << ','
    << r.observed.to_string() << ',' << to_string(r.verdict) << ',' << r.working_precision << ',' << r.residual
    << ',' << (r.easy_layer ? (*r.easy_layer ? "true" : "false") : "") << ',' << (r.informational ? "true" : "false");
  return o.str();
}

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

inline unsigned resolve_workers(unsigned w) { return w == 0 ? supercong::detail::default_workers() : w; }

inline std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  if (hi > 10'000'000) throw error(errc::usage, "prime bound above 10^7");
  return primes_between(lo, hi);
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto ids = resolve_statements(cfg.statements);
  const auto primes = primes_in(cfg.prime_lo, cfg.prime_hi);
  VerifyOptions opts{cfg.guard, cfg.claim_shift};
  auto summary = verify_suite(ids, primes, cfg.policy(), opts, resolve_workers(cfg.workers));

  if (cfg.format == Format::jsonl) {
    for (const auto& r : summary.reports) out << report_json(r, cfg.timing).dump() << '\n';
  } else if (cfg.format == Format::csv) {
    out << kReportCsvHeader << '\n';
    for (const auto& r : summary.reports) out << report_csv(r) << '\n';
  } else {
    std::map<StatementId, std::tuple<std::size_t, std::size_t, long, const CongruenceReport*>> per;
    for (const auto& r : summary.reports) {
      auto& [n, fails, worst, at] = per[r.id];
      if (n == 0 || r.margin() < worst) {
        worst = r.margin();
        at = &r;
      }
      ++n;
      if (!r.pass) ++fails;
    }
    for (StatementId id : ids) {
      auto it = per.find(id);
      if (it == per.end()) {
        out << statement(id).name << ": no applicable instances\n";
        continue;
      }
      const auto& [n, fails, worst, at] = it->second;
      out << statement(id).name << ": " << (fails == 0 ? "PASS" : "FAIL") << " records=" << n << " fail=" << fails
          << " worst_margin=" << worst << " at " << at->params.to_string() << " (observed "
          << at->computed.to_string() << ", claimed " << at->claimed << ")\n";
    }
  }
  err << "summary: records=" << summary.total << " pass=" << summary.passed << " fail=" << summary.failed
      << " not_applicable=" << summary.not_applicable
      << " min_margin=" << (summary.min_margin ? std::to_string(*summary.min_margin) : "none") << '\n';
  return summary.failed == 0 ? kExitOk : kExitViolations;
}

inline void emit_scan(const std::vector<ScanRecord>& recs, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::csv) {
    out << kScanCsvHeader << '\n';
    for (const auto& r : recs) out << scan_csv(r) << '\n';
  } else if (cfg.format == Format::jsonl) {
    for (const auto& r : recs) out << scan_json(r).dump() << '\n';
  } else {
    for (const auto& r : recs) {
      std::string params;
      for (const auto& [k, v] : r.params) params += " " + k + "=" + std::to_string(v);
      out << to_string(r.target) << " base=" << r.base << params << ": " << to_string(r.verdict) << " observed "
          << r.observed.to_string() << " required " << r.required << (r.informational ? " (informational)" : "")
          << '\n';
    }
  }
}

inline int run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto target = parse_scan_target(cfg.target);
  if (!target || *target == ScanTarget::composite) {
    throw error(errc::usage, "scan target must be conj1_1, conj1_2i or conj1_2ii");
  }
  std::vector<ScanRecord> recs;
  if (*target == ScanTarget::conj1_1) {
    for (Family f : resolve_families(cfg.family)) {
      for (std::uint64_t p : primes_in(cfg.prime_lo, cfg.prime_hi)) {
        if (f == Family::minus && p <= 3) continue;
        auto part = scan_conj_1_1(p, conj1_1_grid(p), f, cfg.guard);
        recs.insert(recs.end(), part.begin(), part.end());
      }
    }
  } else {
    const Conj12Part part = *target == ScanTarget::conj1_2_i ? Conj12Part::i : Conj12Part::ii;
    std::vector<std::int64_t> ms = cfg.m;
    if (ms.empty()) {
      for (std::int64_t m = 2; m <= 8; ++m) ms.push_back(m);
    }
    const auto primes = primes_in(3, cfg.pmax);
    struct Job {
      std::int64_t m, r;
      bool informational;
    };
    std::vector<Job> jobs;
    for (std::int64_t m : ms) {
      if (m < 2) throw error(errc::usage, "m must be at least 2");
      if (cfg.r.empty()) {
        for (auto [r, info] : conj1_2_default_r(part, m)) jobs.push_back({m, r, info});
      } else {
        for (std::int64_t r : cfg.r) {
          if (conj1_2_pair_admissible(part, m, r)) jobs.push_back({m, r, false});
        }
      }
    }
    auto chunks = supercong::detail::parallel_map(jobs.size(), resolve_workers(cfg.workers), [&](std::size_t i) {
      return scan_conj_1_2(part, jobs[i].m, jobs[i].r, primes, cfg.guard, jobs[i].informational);
    });
    for (auto& c : chunks) recs.insert(recs.end(), c.begin(), c.end());
  }
  emit_scan(recs, cfg, out);
  std::size_t held = 0, violated = 0, informational = 0, easy_fail = 0;
  for (const auto& r : recs) {
    if (r.informational) {
      ++informational;
      continue;
    }
    if (r.verdict == Verdict::violated) ++violated;
    if (r.verdict == Verdict::holds) ++held;
    if (r.easy_layer && !*r.easy_layer) ++easy_fail;
  }
  err << "summary: target=" << cfg.target << " records=" << recs.size() << " holds=" << held
      << " violated=" << violated << " easy_layer_failures=" << easy_fail << " informational=" << informational
      << '\n';
  return violated == 0 && easy_fail == 0 ? kExitOk : kExitViolations;
}

/// Every composite is expected to fail the congruence; a composite that
/// satisfies it contradicts the claim, and that is what fails the run.
inline int run_search(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<ScanRecord> recs;
  const unsigned workers = cfg.workers == 0 ? default_search_workers() : cfg.workers;
  for (Family f : resolve_families(cfg.family)) {
    auto part = search_composites(cfg.nmin, cfg.nmax, f, workers);
    recs.insert(recs.end(), part.begin(), part.end());
  }
  emit_scan(recs, cfg, out);
  std::size_t held = 0, violated = 0, undefined = 0;
  for (const auto& r : recs) {
    if (r.verdict == Verdict::holds) ++held;
    if (r.verdict == Verdict::violated) ++violated;
    if (r.verdict == Verdict::undefined) ++undefined;
  }
  err << "summary: target=composite records=" << recs.size() << " holds=" << held << " violated=" << violated
      << " undefined=" << undefined << '\n';
  return held == 0 ? kExitOk : kExitViolations;
}

}  // namespace detail

struct SelftestLine {
  std::string check;
  bool ok;
  std::string detail;
};

/// Oracle equivalence, exact proof identities, Bernoulli cross-checks and
/// the m = p -/+ 1 consistency check. Output is deterministic.
inline std::vector<SelftestLine> selftest_checks() {
  std::vector<SelftestLine> lines;
  const ParamPolicy policy;

  for (std::uint64_t p : {5, 7, 11, 13}) {
    std::size_t n = 0, bad = 0;
    std::string first;
    for (StatementId id : all_statements()) {
      for (const Params& q : policy.enumerate(id, p)) {
        if (!statement(id).applicable(q)) continue;
        auto c = oracle_check(id, q, statement(id).claim(q) + 2);
        ++n;
        if (!c.lhs_equal || !c.rhs_equal) {
          if (bad++ == 0) first = std::string(statement(id).name) + " " + q.to_string();
        }
      }
    }
    lines.push_back({"oracle p=" + std::to_string(p), bad == 0,
                     std::to_string(n) + " instances" + (bad ? ", first mismatch " + first : "")});
  }

  for (std::uint64_t p : {5, 7, 11, 13}) {
    bool ok = true;
    for (unsigned m = 1; m <= 3; ++m) {
      auto hm = harmonic_exact(p - 1, m);
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += hm[k];
      BigRational correction = m == 1 ? BigRational(static_cast<long>(p) - 1) : harmonic_exact(p - 1, m - 1)[p - 1];
      if (lhs != BigRational(big_from_u64(p)) * hm[p - 1] - correction) ok = false;
    }
    lines.push_back({"proof identities p=" + std::to_string(p), ok, "orders 1..3"});
  }

  {
    bool ok = true;
    std::size_t first_bad = 0;
    for (std::size_t n = 2; n <= 600; n += 2) {
      if (bernoulli_exact(n).get_den() != vsc_denominator(n)) {
        ok = false;
        if (!first_bad) first_bad = n;
      }
    }
    lines.push_back({"bernoulli von Staudt-Clausen n<=600", ok, ok ? "" : "first bad n=" + std::to_string(first_bad)});
    lines.push_back({"bernoulli B_12", bernoulli_exact(12) == make_rational(-691, 2730), to_string(bernoulli_exact(12))});
  }

  {
    std::size_t n = 0, bad = 0;
    for (std::uint64_t p : primes_between(7, 499)) {
      for (std::int64_t s : {2, 4}) {
        ++n;
        if (!verify(StatementId::E3_3, Params{p, {}, {}, s, {}, {}}).pass) ++bad;
      }
    }
    lines.push_back({"inverse power sums s in {2,4}, 5<p<=499", bad == 0, std::to_string(n) + " instances"});
  }

  for (std::uint64_t p : {11, 13, 17}) {
    bool ok = true;
    for (const auto& c : cross_consistency(p)) ok = ok && c.equal;
    lines.push_back({"m=p-1/p+1 consistency p=" + std::to_string(p), ok, ""});
  }
  return lines;
}

namespace detail {

inline int run_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& l : selftest_checks()) {
    out << (l.ok ? "ok   " : "FAIL ") << l.check << (l.detail.empty() ? "" : " (" + l.detail + ")") << '\n';
    all = all && l.ok;
  }
  out << (all ? "selftest passed" : "selftest FAILED") << '\n';
  return all ? kExitOk : kExitViolations;
}

/// Loads the file if it exists; otherwise the cache is written there after
/// the run.
inline bool load_bernoulli_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  default_bernoulli_cache().load(in);
  return true;
}

}  // namespace detail

/// Runs one configured command. Never throws: usage problems map to 2,
/// I/O and cache problems to 3.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    bool cache_loaded = false;
    if (!cfg.bernoulli_cache.empty()) cache_loaded = detail::load_bernoulli_cache(cfg.bernoulli_cache);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) {
        err << "error: cannot open " << cfg.output << " for writing\n";
        return kExitIo;
      }
      sink = &file;
    }

    int code = kExitOk;
    switch (cfg.subcommand) {
      case Subcommand::verify: code = detail::run_verify(cfg, *sink, err); break;
      case Subcommand::scan: code = detail::run_scan(cfg, *sink, err); break;
      case Subcommand::search: code = detail::run_search(cfg, *sink, err); break;
      case Subcommand::selftest: code = detail::run_selftest(*sink); break;
    }
    sink->flush();
    if (!*sink) {
      err << "error: write failed\n";
      return kExitIo;
    }
    if (!cfg.bernoulli_cache.empty() && !cache_loaded) {
      std::ofstream cache(cfg.bernoulli_cache);
      default_bernoulli_cache().save(cache);
      if (!cache) {
        err << "error: cannot write " << cfg.bernoulli_cache << '\n';
        return kExitIo;
      }
    }
    return code;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    if (e.code() == errc::irregular_cache) return kExitIo;
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

/// Builds a RunConfig from argv. Returns the config, or an exit code when
/// parsing ended the program (help, bad flags).
inline std::variant<RunConfig, int> parse_args(int argc, const char* const* argv, std::ostream& out,
                                               std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Verification harness for prime-power super-congruences"};
  app.require_subcommand(1);

  std::string primes, format = "jsonl", statements = "all";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "jsonl, csv or human")->check(CLI::IsMember({"jsonl", "csv", "human"}));
    sub->add_option("--output", cfg.output, "write records here instead of stdout");
    sub->add_option("--workers", cfg.workers, "worker threads (0: one per core)");
    sub->add_option("--bernoulli-cache", cfg.bernoulli_cache, "flat-file Bernoulli cache");
    sub->add_option("--guard", cfg.guard, "guard digits beyond the claimed exponent");
  };

  auto* verify_cmd = app.add_subcommand("verify", "check the statement catalog over a prime range");
  add_common(verify_cmd);
  verify_cmd->add_option("--statements", statements, "comma-separated ids or 'all'");
  verify_cmd->add_option("--primes", primes, "prime range a..b (default 5..499)");
  verify_cmd->add_option("--claim-shift", cfg.claim_shift, "add this to every claimed valuation");
  verify_cmd->add_option("--m-max", cfg.m_max, "largest m sampled");
  verify_cmd->add_option("--n-max", cfg.n_max, "largest n sampled");
  verify_cmd->add_option("--s-cap", cfg.s_cap, "largest s for p above 53");
  verify_cmd->add_flag("--timing", cfg.timing, "include wall_seconds in JSONL records");

  auto* scan_cmd = app.add_subcommand("scan", "scan the open conjectures");
  add_common(scan_cmd);
  scan_cmd->add_option("--target", cfg.target, "conj1_1, conj1_2i or conj1_2ii")
      ->check(CLI::IsMember({"conj1_1", "conj1_2i", "conj1_2ii"}));
  scan_cmd->add_option("--primes", primes, "primes for conj1_1 (default 2..11)");
  scan_cmd->add_option("--family", cfg.family, "plus, minus or both")->check(CLI::IsMember({"plus", "minus", "both"}));
  scan_cmd->add_option("--m", cfg.m, "m values (default 2..8)")->delimiter(',');
  scan_cmd->add_option("--r", cfg.r, "r values (default: admissible r up to 2m)")->delimiter(',');
  scan_cmd->add_option("--pmax", cfg.pmax, "largest prime for conj1_2 scans");

  auto* search_cmd = app.add_subcommand("search", "classify composite n");
  add_common(search_cmd);
  search_cmd->add_option("--nmin", cfg.nmin, "smallest n");
  search_cmd->add_option("--nmax", cfg.nmax, "largest n");
  search_cmd->add_option("--family", cfg.family, "plus, minus or both")->check(CLI::IsMember({"plus", "minus", "both"}));

  auto* selftest_cmd = app.add_subcommand("selftest", "oracle equivalence and integrity checks");
  selftest_cmd->add_option("--bernoulli-cache", cfg.bernoulli_cache, "flat-file Bernoulli cache to validate");
  selftest_cmd->add_option("--output", cfg.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify_cmd) {
      cfg.subcommand = Subcommand::verify;
    } else if (*scan_cmd) {
      cfg.subcommand = Subcommand::scan;
      cfg.prime_lo = 2;
      cfg.prime_hi = 11;
    } else if (*search_cmd) {
      cfg.subcommand = Subcommand::search;
    } else {
      cfg.subcommand = Subcommand::selftest;
    }
    if (!primes.empty()) std::tie(cfg.prime_lo, cfg.prime_hi) = parse_range(primes);
    cfg.format = json(format).get<Format>();
    cfg.statements.clear();
    std::stringstream ss(statements);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) cfg.statements.push_back(item);
    }
    if (cfg.subcommand == Subcommand::verify) resolve_statements(cfg.statements);
    if (cfg.nmin > cfg.nmax) throw error(errc::usage, "nmin above nmax");
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return cfg;
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  auto parsed = parse_args(argc, argv, out, err);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace supercong::cli
