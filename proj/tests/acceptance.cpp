// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. With no arguments every criterion runs and prints one
// PASS/FAIL line; with arguments only the named ones run ("1".."8", or
// "defects" for the classification of criterion 1's failures). Exit status is
// zero iff every selected criterion passed.

#include <gmpxx.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "supercong/supercong.hpp"

using namespace supercong;

namespace {

// Pinned scope, bounds and budgets.
constexpr std::uint64_t kSuitePrimeLo = 5;
constexpr std::uint64_t kSuitePrimeHi = 499;
constexpr unsigned kGuard = 2;
constexpr double kSuiteBudgetSeconds = 60;
constexpr double kOracleBudgetSeconds = 60;
constexpr double kBernoulliBudgetSeconds = 30;
constexpr double kConj11BudgetSeconds = 300;
constexpr double kConj12BudgetSeconds = 300;
constexpr double kCompositeBudgetSeconds = 600;
constexpr std::size_t kBernoulliIndexMax = 600;
constexpr std::int64_t kConj12MMax = 8;
constexpr std::uint64_t kConj12PrimeMax = 1000;
constexpr std::uint64_t kCompositeMin = 4;
constexpr std::uint64_t kCompositeMax = 120;
const std::vector<std::uint64_t> kOraclePrimes{5, 7, 11, 13};
const std::vector<std::uint64_t> kConj11Primes{2, 3, 5, 7, 11};

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

RangeSummary headline_suite() {
  return verify_suite(all_statements(), primes_between(kSuitePrimeLo, kSuitePrimeHi), ParamPolicy{},
                      VerifyOptions{kGuard, 0}, 1);
}

Outcome theorem_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  auto s = headline_suite();
  const double secs = seconds_since(t0);
  std::map<std::string, std::size_t> by_statement;
  for (const auto& f : s.failures) ++by_statement[std::string(statement(f.id).name)];
  std::string detail = "records=" + std::to_string(s.total) + " fail=" + std::to_string(s.failed) +
                       " not_applicable=" + std::to_string(s.not_applicable) + " time=" + fmt_seconds(secs);
  for (const auto& [name, n] : by_statement) detail += " " + name + ":" + std::to_string(n);
  return {s.failed == 0 && secs < kSuiteBudgetSeconds, detail};
}

// A failure of criterion 1 is explained if it is one of the two literal
// defects: the last elementary symmetric instance (needs a Wilson prime) or
// the top-order harmonic instance m = 2n+1 (needs p | B_{p-1-2n}). The
// prediction is computed independently and must match the failure set exactly.
bool predicted_failure(const CongruenceReport& r) {
  const auto& q = r.params;
  const std::uint64_t p = q.p;
  mpz_class pp = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
  if (r.id == StatementId::L2_2 && q.k && static_cast<std::uint64_t>(*q.k) == p - 1) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), p - 1);
    return (f + 1) % pp != 0;
  }
  if (r.id == StatementId::L3_1a && q.m && q.n && *q.m == 2 * *q.n + 1) {
    const mpq_class& b = bernoulli_exact(p - 1 - 2 * static_cast<std::uint64_t>(*q.n));
    return mpz_class(b.get_num()) % static_cast<unsigned long>(p) != 0;
  }
  return false;
}

Outcome suite_defects() {
  auto s = headline_suite();
  std::size_t unexplained = 0, missing = 0, wilson = 0, top_order = 0;
  for (const auto& r : s.reports) {
    const bool predicted = predicted_failure(r);
    if (!r.pass && !predicted) ++unexplained;
    if (r.pass && predicted) ++missing;
    if (!r.pass && r.id == StatementId::L2_2) ++wilson;
    if (!r.pass && r.id == StatementId::L3_1a) ++top_order;
  }
  return {unexplained == 0 && missing == 0 && s.failed > 0,
          "fail=" + std::to_string(s.failed) + " last_elementary_symmetric=" + std::to_string(wilson) +
              " top_order_harmonic=" + std::to_string(top_order) + " unexplained=" + std::to_string(unexplained) +
              " predicted_but_passed=" + std::to_string(missing)};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t n = 0, bad = 0;
  std::string first;
  for (std::uint64_t p : kOraclePrimes) {
    for (StatementId id : all_statements()) {
      for (const Params& q : ParamPolicy{}.enumerate(id, p)) {
        if (!statement(id).applicable(q)) continue;
        auto c = oracle_check(id, q, statement(id).claim(q) + kGuard);
        ++n;
        if (!(c.lhs_equal && c.rhs_equal) && bad++ == 0) first = std::string(statement(id).name) + " " + q.to_string();
      }
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < kOracleBudgetSeconds,
          "instances=" + std::to_string(n) + " mismatches=" + std::to_string(bad) +
              (first.empty() ? "" : " first=" + first) + " time=" + fmt_seconds(secs)};
}

Outcome proof_identities() {
  std::size_t checked = 0, bad = 0;
  for (std::uint64_t p : kOraclePrimes) {
    for (unsigned m = 1; m <= 3; ++m) {
      auto h = harmonic_exact(p - 1, m);
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += h[k];
      // The correction is H_{p-1}^(m-1), with H^(0)_{p-1} = p - 1.
      const BigRational correction =
          m == 1 ? BigRational(static_cast<long>(p - 1)) : harmonic_exact(p - 1, m - 1)[p - 1];
      ++checked;
      if (lhs != BigRational(static_cast<long>(p)) * h[p - 1] - correction) ++bad;
    }
  }
  auto h5 = harmonic_exact(4, 1);
  BigRational s5 = 0;
  for (int k = 1; k <= 4; ++k) s5 += h5[k];
  const bool example = s5 == make_rational(77, 12) && h5[4] == make_rational(25, 12);
  return {bad == 0 && example, "identities=" + std::to_string(checked) + " mismatches=" + std::to_string(bad) +
                                   " p=5,m=1 sum=" + to_string(s5)};
}

Outcome bernoulli_integrity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= kBernoulliIndexMax; n += 2) {
    if (bernoulli_exact(n).get_den() != vsc_denominator(n)) ++bad;
  }
  const bool b12 = bernoulli_exact(12) == make_rational(-691, 2730);
  const double secs = seconds_since(t0);
  return {bad == 0 && b12 && secs < kBernoulliBudgetSeconds,
          "denominator_mismatches=" + std::to_string(bad) + " B_12=" + to_string(bernoulli_exact(12)) +
              " time=" + fmt_seconds(secs)};
}

Outcome conj_1_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t records = 0, violated = 0, undefined = 0;
  std::uint64_t largest = 0;
  for (std::uint64_t p : kConj11Primes) {
    for (Family f : {Family::plus, Family::minus}) {
      if (f == Family::minus && p <= 3) continue;
      auto grid = conj1_1_grid(p);
      // The configured grid must contain every n <= 4p^2.
      if (grid.size() < 4 * p * p) return {false, "grid for p=" + std::to_string(p) + " is not dense"};
      for (const auto& r : scan_conj_1_1(p, grid, f, kGuard)) {
        ++records;
        largest = std::max(largest, r.params.back().second > 0 ? static_cast<std::uint64_t>(r.params.back().second) : 0);
        if (r.verdict == Verdict::violated) ++violated;
        if (r.verdict == Verdict::undefined) ++undefined;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violated == 0 && undefined == 0 && secs < kConj11BudgetSeconds,
          "records=" + std::to_string(records) + " violated=" + std::to_string(violated) +
              " largest_n=" + std::to_string(largest) + " time=" + fmt_seconds(secs)};
}

Outcome conj_1_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto primes = primes_between(3, kConj12PrimeMax);
  std::size_t records = 0, violated = 0, easy_fail = 0, pairs = 0;
  for (Conj12Part part : {Conj12Part::i, Conj12Part::ii}) {
    for (std::int64_t m = 2; m <= kConj12MMax; ++m) {
      for (auto [r, informational] : conj1_2_default_r(part, m)) {
        if (informational) continue;
        ++pairs;
        for (const auto& rec : scan_conj_1_2(part, m, r, primes, kGuard)) {
          ++records;
          if (rec.verdict == Verdict::violated) ++violated;
          if (!rec.easy_layer.value_or(false)) ++easy_fail;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {violated == 0 && easy_fail == 0 && records > 0 && secs < kConj12BudgetSeconds,
          "pairs=" + std::to_string(pairs) + " records=" + std::to_string(records) + " violated=" +
              std::to_string(violated) + " easy_layer_failures=" + std::to_string(easy_fail) +
              " time=" + fmt_seconds(secs)};
}

Outcome composite_search() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t composites = 0;
  for (std::uint64_t n = kCompositeMin; n <= kCompositeMax; ++n) composites += !is_prime(n);
  std::size_t holds = 0, violated = 0, undefined = 0, missing_evidence = 0, records = 0;
  for (Family f : {Family::plus, Family::minus}) {
    auto recs = search_composites(kCompositeMin, kCompositeMax, f, default_search_workers());
    if (recs.size() != composites) return {false, "not every composite was classified"};
    for (const auto& r : recs) {
      ++records;
      if (r.verdict == Verdict::holds) ++holds;
      if (r.verdict == Verdict::violated) ++violated;
      if (r.verdict == Verdict::undefined) ++undefined;
      if (r.note.empty() || (r.verdict != Verdict::undefined && r.residual.empty())) ++missing_evidence;
    }
  }
  const double secs = seconds_since(t0);
  return {holds == 0 && missing_evidence == 0 && secs < kCompositeBudgetSeconds,
          "records=" + std::to_string(records) + " holds=" + std::to_string(holds) + " violated=" +
              std::to_string(violated) + " undefined=" + std::to_string(undefined) + " time=" + fmt_seconds(secs)};
}

Outcome falsification() {
  const auto primes = primes_between(kSuitePrimeLo, kSuitePrimeHi);
  std::vector<std::string> vacuous;
  for (StatementId id : all_statements()) {
    auto s = verify_suite({id}, primes, ParamPolicy{}, VerifyOptions{kGuard, 1}, 1);
    if (s.failed == 0) vacuous.push_back(std::string(statement(id).name));
  }
  // The m = 1 instance of the family sum is (1 - 1)^{p-1} = 0: excluded by name.
  bool m1_zero = true;
  for (std::uint64_t p : {5, 7, 11, 101}) {
    m1_zero = m1_zero && verify(StatementId::T1_2, Params{p, 1, {}, {}, {}, {}}, VerifyOptions{kGuard, 1}).residual.is_zero();
  }
  std::string detail = "statements=" + std::to_string(kStatementCount) + " without_failure=" +
                       std::to_string(vacuous.size());
  for (const auto& v : vacuous) detail += " " + v;
  return {vacuous.empty() && m1_zero, detail};
}

const std::map<std::string, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> table{
      {"1", {"theorem suite 5..499", theorem_suite}},
      {"2", {"oracle equivalence", oracle_equivalence}},
      {"3", {"exact proof identities", proof_identities}},
      {"4", {"bernoulli integrity", bernoulli_integrity}},
      {"5", {"first conjecture scan", conj_1_1}},
      {"6", {"second conjecture scan", conj_1_2}},
      {"7", {"composite search", composite_search}},
      {"8", {"falsification sensitivity", falsification}},
      {"defects", {"criterion 1 failures are the two known defects", suite_defects}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> picks(argv + 1, argv + argc);
  if (picks.empty()) picks = {"1", "2", "3", "4", "5", "6", "7", "8"};
  bool all = true;
  for (const auto& key : picks) {
    auto it = criteria().find(key);
    if (it == criteria().end()) {
      std::cerr << "unknown criterion '" << key << "'\n";
      return 2;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << key << " (" << it->second.first << "): " << o.detail
              << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
