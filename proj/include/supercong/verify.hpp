// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supercong/detail/parallel.hpp"
#include "supercong/evaluate.hpp"
#include "supercong/primes.hpp"
#include "supercong/statements.hpp"

namespace supercong {

struct VerifyOptions {
  unsigned guard = 2;
  /// Added to every claimed valuation. Nonzero only when probing that the
  /// claims are sharp.
  int claim_shift = 0;
};

struct CongruenceReport {
  StatementId id;
  Params params;
  unsigned working_precision;
  Residue residual;
  Valuation computed;
  long claimed;
  bool pass;
  double wall_seconds;

  /// computed - claimed; for AtLeast values this is a lower bound.
  long margin() const { return computed.amount - claimed; }
};

inline long claimed_valuation(StatementId id, const Params& q, const VerifyOptions& opts) {
  return static_cast<long>(statement(id).claim(q)) + opts.claim_shift;
}

/// LHS - RHS in the ring mod p^{claim + guard}. Inapplicable parameters throw
/// NotApplicable; a failing congruence is a report, not an error.
inline CongruenceReport verify(StatementId id, const Params& q, const VerifyOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const Statement& st = statement(id);
  if (!st.applicable(q)) throw error(errc::not_applicable, std::string(st.name) + " at " + q.to_string());
  const long claimed = claimed_valuation(id, q, opts);
  const long precision = std::max<long>(1, claimed + static_cast<long>(opts.guard));
  auto sides = evaluate_modular(id, q, static_cast<unsigned>(precision));
  Residue residual = sides.lhs - sides.rhs;
  Valuation v = valuation_of(residual);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return CongruenceReport{id, q, static_cast<unsigned>(precision), std::move(residual), v, claimed,
                          v.satisfies(claimed), secs};
}

struct RangeSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t not_applicable = 0;
  std::optional<long> min_margin;
  std::vector<CongruenceReport> reports;
  std::vector<CongruenceReport> failures;
};

struct VerifyTask {
  StatementId id;
  Params params;
};

/// Every (statement, p, params) the policy produces, in statement, prime,
/// parameter order. Inapplicable combinations are dropped and counted.
inline std::vector<VerifyTask> plan_tasks(const std::vector<StatementId>& ids, const std::vector<std::uint64_t>& primes,
                                          const ParamPolicy& policy, std::size_t* skipped = nullptr) {
  std::vector<VerifyTask> tasks;
  std::size_t dropped = 0;
  for (StatementId id : ids) {
    for (std::uint64_t p : primes) {
      for (const Params& q : policy.enumerate(id, p)) {
        if (statement(id).applicable(q)) {
          tasks.push_back({id, q});
        } else {
          ++dropped;
        }
      }
    }
  }
  if (skipped) *skipped = dropped;
  return tasks;
}

inline RangeSummary summarize(std::vector<CongruenceReport> reports, std::size_t not_applicable) {
  RangeSummary s;
  s.not_applicable = not_applicable;
  s.total = reports.size();
  for (const auto& r : reports) {
    if (r.pass) {
      ++s.passed;
    } else {
      ++s.failed;
      s.failures.push_back(r);
    }
    if (!s.min_margin || r.margin() < *s.min_margin) s.min_margin = r.margin();
  }
  s.reports = std::move(reports);
  return s;
}

inline RangeSummary verify_suite(const std::vector<StatementId>& ids, const std::vector<std::uint64_t>& primes,
                                 const ParamPolicy& policy = {}, const VerifyOptions& opts = {},
                                 unsigned workers = 1) {
  std::size_t skipped = 0;
  auto tasks = plan_tasks(ids, primes, policy, &skipped);
  auto reports = detail::parallel_map(tasks.size(), workers,
                                      [&](std::size_t i) { return verify(tasks[i].id, tasks[i].params, opts); });
  return summarize(std::move(reports), skipped);
}

inline RangeSummary verify_range(StatementId id, const std::vector<std::uint64_t>& primes,
                                 const ParamPolicy& policy = {}, const VerifyOptions& opts = {},
                                 unsigned workers = 1) {
  return verify_suite({id}, primes, policy, opts, workers);
}

struct ConsistencyCheck {
  StatementId family;
  StatementId specialization;
  std::int64_t m;
  std::int64_t n;
  bool equal;
};

/// The m = p -/+ 1 instances of the weighted family sum against the
/// dedicated specializations, compared as residues mod p^3.
inline std::vector<ConsistencyCheck> cross_consistency(std::uint64_t p, const ParamPolicy& policy = {}) {
  std::vector<ConsistencyCheck> out;
  const auto pi = static_cast<std::int64_t>(p);
  for (std::int64_t n : policy.n_values(p)) {
    for (auto [m, special] : {std::pair{pi - 1, StatementId::R1_9}, std::pair{pi + 1, StatementId::R1_10}}) {
      Params fam{p, m, n, {}, {}, {}};
      Params single{p, {}, n, {}, {}, {}};
      const bool eq = evaluate_modular(StatementId::T1_3_8, fam, 3).lhs == evaluate_modular(special, single, 3).lhs;
      out.push_back({StatementId::T1_3_8, special, m, n, eq});
    }
  }
  return out;
}

struct OracleCheck {
  StatementId id;
  Params params;
  bool lhs_equal;
  bool rhs_equal;
};

/// Modular sides against the exact rational sides reduced mod p^c.
inline OracleCheck oracle_check(StatementId id, const Params& q, unsigned c) {
  auto modular = evaluate_modular(id, q, c);
  auto exact = evaluate_exact(id, q);
  PrimePowerModulus ring(q.p, c);
  return {id, q, from_rational(exact.lhs, ring) == modular.lhs, from_rational(exact.rhs, ring) == modular.rhs};
}

}  // namespace supercong
