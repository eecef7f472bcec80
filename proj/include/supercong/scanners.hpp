// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercong/detail/parallel.hpp"
#include "supercong/fracbinom.hpp"
#include "supercong/modring.hpp"
#include "supercong/primes.hpp"
#include "supercong/rational.hpp"

namespace supercong {

enum class ScanTarget { conj1_1, conj1_2_i, conj1_2_ii, composite };

inline std::string to_string(ScanTarget t) {
  switch (t) {
    case ScanTarget::conj1_1: return "conj1_1";
    case ScanTarget::conj1_2_i: return "conj1_2i";
    case ScanTarget::conj1_2_ii: return "conj1_2ii";
    case ScanTarget::composite: return "composite";
  }
  return "?";
}

inline std::optional<ScanTarget> parse_scan_target(std::string_view s) {
  for (auto t : {ScanTarget::conj1_1, ScanTarget::conj1_2_i, ScanTarget::conj1_2_ii, ScanTarget::composite}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

/// Which of the two binomial-power families is summed: the one with upper
/// argument -1/(q+1) and exponent q+1, or 1/(q-1) and exponent q-1.
enum class Family { plus, minus };

inline std::string to_string(Family f) { return f == Family::plus ? "plus" : "minus"; }

enum class Verdict { holds, violated, undefined };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "Holds";
    case Verdict::violated: return "Violated";
    case Verdict::undefined: return "Undefined";
  }
  return "?";
}

struct ScanRecord {
  ScanTarget target;
  /// The prime, or the integer tested in the composite search.
  std::uint64_t base;
  std::vector<std::pair<std::string, std::int64_t>> params;
  Valuation observed;
  long required;
  Verdict verdict;
  /// Residual as a decimal integer modulo base^working_precision.
  std::string residual;
  unsigned working_precision;
  /// r/m family scans only: the independent mod-p evaluation vanished and
  /// agreed with the high-precision residual.
  std::optional<bool> easy_layer;
  /// Records outside the default reading of a hypothesis; never counted.
  bool informational = false;
  std::string note;
};

/// Violated only on an exact valuation below the bound.
inline Verdict judge(const Valuation& v, long required) {
  return !v.is_exact() || static_cast<long>(v.amount) >= required ? Verdict::holds : Verdict::violated;
}

// ---------------------------------------------------------------------------
// Partial sums beyond p

inline unsigned conj1_1_constant(std::uint64_t p, Family f) {
  if (f == Family::minus) return 4;
  return p == 2 ? 1 : p == 3 ? 3 : 5;
}

inline long conj1_1_bound(std::uint64_t p, std::uint64_t n, Family f) {
  return static_cast<long>(conj1_1_constant(p, f)) * ((static_cast<long>(valuation_u64(n, p)) + 1) / 2);
}

/// Every n <= 4p^2 when p <= dense_limit, plus n = a p^b for a <= p, b <= 4.
inline std::vector<std::uint64_t> conj1_1_grid(std::uint64_t p, std::uint64_t dense_limit = 13,
                                               unsigned max_b = 4) {
  std::vector<std::uint64_t> out;
  if (p <= dense_limit) {
    for (std::uint64_t n = 1; n <= 4 * p * p; ++n) out.push_back(n);
  }
  std::uint64_t pb = 1;
  for (unsigned b = 0; b <= max_b; ++b, pb *= p) {
    for (std::uint64_t a = 1; a <= p; ++a) out.push_back(a * pb);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// nu_p of sum_{k<n} (x choose k)^t for every n in the grid, one pass over k.
/// The binomials are carried as p^v * unit with exact integer factors, so no
/// padding is needed however far k runs past p.
inline std::vector<ScanRecord> scan_conj_1_1(std::uint64_t p, std::vector<std::uint64_t> grid, Family family,
                                             unsigned guard = 2) {
  if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not prime");
  if (family == Family::minus && p <= 3) {
    throw error(errc::not_applicable, "the exponent p-1 family needs p > 3");
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove(grid.begin(), grid.end(), 0u), grid.end());
  std::vector<ScanRecord> out;
  if (grid.empty()) return out;

  long top = 0;
  for (auto n : grid) top = std::max(top, conj1_1_bound(p, n, family));
  const auto precision = static_cast<unsigned>(std::max<long>(1, top + guard));
  PrimePowerModulus ring(p, precision);
  const auto pi = static_cast<std::int64_t>(p);
  const std::int64_t num = family == Family::plus ? -1 : 1;
  const std::int64_t den = family == Family::plus ? pi + 1 : pi - 1;
  const std::uint64_t t = family == Family::plus ? p + 1 : p - 1;

  RationalBinomGenerator gen(num, den, ring);
  Residue sum = Residue::zero(ring);
  std::size_t next = 0;
  for (std::uint64_t k = 0; next < grid.size(); ++k) {
    sum += gen.power(t);
    if (k + 1 == grid[next]) {
      const std::uint64_t n = grid[next++];
      const long req = conj1_1_bound(p, n, family);
      Valuation v = valuation_of(sum);
      out.push_back(ScanRecord{ScanTarget::conj1_1,
                               p,
                               {{"family", family == Family::plus ? 1 : -1}, {"n", static_cast<std::int64_t>(n)}},
                               v,
                               req,
                               judge(v, req),
                               sum.value().get_str(),
                               precision,
                               std::nullopt,
                               false,
                               p <= 3 ? "k runs past p with exact division; binomials stay p-adic integers" : ""});
    }
    gen.advance();
  }
  return out;
}

// ---------------------------------------------------------------------------
// r/m families

enum class Conj12Part { i, ii };

/// Whether (m, r) meets the part's standing hypotheses. Part i reads
/// "r >= -m/2" as 2r >= -m.
inline bool conj1_2_pair_admissible(Conj12Part part, std::int64_t m, std::int64_t r) {
  if (m < 2) return false;
  if (part == Conj12Part::i) return m > 2 && ((m - r) % 2 != 0) && 2 * r >= -m;
  return r >= -m;
}

inline bool conj1_2_prime_admissible(Conj12Part part, std::int64_t m, std::int64_t r, std::uint64_t p) {
  const auto pi = static_cast<std::int64_t>(p);
  if (p % 2 == 0 || pi <= r || m % pi == 0) return false;
  const std::int64_t step = part == Conj12Part::i ? m : 2 * m;
  return ((pi - r) % step + step) % step == 0;
}

/// The r values scanned by default: from the smallest admissible r up to 2m.
/// For odd m in part i, the r = -(m+1)/2 boundary (admissible only under a
/// floor reading of -m/2) is included and flagged.
inline std::vector<std::pair<std::int64_t, bool>> conj1_2_default_r(Conj12Part part, std::int64_t m) {
  std::vector<std::pair<std::int64_t, bool>> out;
  const std::int64_t lo = part == Conj12Part::i ? -(m / 2) : -m;
  if (part == Conj12Part::i && m % 2 == 1) {
    const std::int64_t floor_r = -(m + 1) / 2;
    if ((m - floor_r) % 2 != 0) out.push_back({floor_r, true});
  }
  for (std::int64_t r = lo; r <= 2 * m; ++r) {
    if (conj1_2_pair_admissible(part, m, r)) out.push_back({r, false});
  }
  return out;
}

namespace detail {

/// sum_{k<p} sign(k) (r/m choose k)^t for several exponents t at once.
inline std::vector<Residue> conj1_2_sums(std::uint64_t p, std::int64_t m, std::int64_t r,
                                         const std::vector<std::uint64_t>& exponents, SignMode sign,
                                         unsigned precision) {
  PrimePowerModulus ring(p, precision);
  RationalBinomGenerator gen(r, m, ring);
  std::vector<Residue> sums(exponents.size(), Residue::zero(ring));
  for (std::uint64_t k = 0; k < p; ++k) {
    const bool neg = sign_is_negative(sign, k, static_cast<std::uint64_t>(m));
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      Residue term = gen.power(exponents[i]);
      if (neg) {
        sums[i] -= term;
      } else {
        sums[i] += term;
      }
    }
    gen.advance();
  }
  return sums;
}

}  // namespace detail

/// Part i: sum (-1)^{km} (r/m choose k)^m == 0 mod p^3. Part ii:
/// sum (-1)^k (r/m choose k)^{2n+1} == 0 mod p^2 for n = 1..m-1.
/// Each record also carries the independent mod-p evaluation.
inline std::vector<ScanRecord> scan_conj_1_2(Conj12Part part, std::int64_t m, std::int64_t r,
                                             const std::vector<std::uint64_t>& primes, unsigned guard = 2,
                                             bool informational = false) {
  if (m < 2) throw error(errc::usage, "conjecture scan needs m >= 2");
  const long required = part == Conj12Part::i ? 3 : 2;
  const auto precision = static_cast<unsigned>(required + guard);
  const ScanTarget target = part == Conj12Part::i ? ScanTarget::conj1_2_i : ScanTarget::conj1_2_ii;
  std::vector<std::uint64_t> exponents;
  if (part == Conj12Part::i) {
    exponents.push_back(static_cast<std::uint64_t>(m));
  } else {
    for (std::int64_t n = 1; n < m; ++n) exponents.push_back(static_cast<std::uint64_t>(2 * n + 1));
  }
  const SignMode sign = part == Conj12Part::i ? SignMode::alternating_km : SignMode::alternating;
  const std::string note = informational ? "r at the floor reading of -m/2; outside the default hypothesis"
                                         : (part == Conj12Part::i ? "r >= -m/2 read as 2r >= -m" : "");

  std::vector<ScanRecord> out;
  for (std::uint64_t p : primes) {
    if (!conj1_2_prime_admissible(part, m, r, p)) continue;
    auto high = detail::conj1_2_sums(p, m, r, exponents, sign, precision);
    auto low = detail::conj1_2_sums(p, m, r, exponents, sign, 1);
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      std::vector<std::pair<std::string, std::int64_t>> params{{"m", m}, {"r", r}};
      if (part == Conj12Part::ii) params.emplace_back("n", static_cast<std::int64_t>(i + 1));
      Valuation v = valuation_of(high[i]);
      const bool easy = low[i].is_zero() && truncate(high[i], 1) == low[i];
      out.push_back(ScanRecord{target, p, std::move(params), v, required, judge(v, required),
                               high[i].value().get_str(), precision, easy, informational, note});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composite search

struct CompositeEvidence {
  BigRational sum;
  /// (q, a, nu_q(sum)) for each q^a exactly dividing n.
  std::vector<std::tuple<std::uint64_t, unsigned, long>> local;
};

/// sum_{k=0}^{n-1} (x choose k)^t over the rationals, x = -1/(n+1), t = n+1
/// for the plus family and x = 1/(n-1), t = n-1 for minus.
inline BigRational composite_sum(std::uint64_t n, Family family) {
  if (n < 2 || (family == Family::minus && n < 3)) throw error(errc::usage, "composite sum needs a larger n");
  const auto ni = static_cast<std::int64_t>(n);
  const BigRational x = family == Family::plus ? make_rational(-1, ni + 1) : make_rational(1, ni - 1);
  const unsigned long t = family == Family::plus ? n + 1 : n - 1;
  BigRational binom = 1, sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    sum += pow(binom, t);
    binom *= (x - BigRational(big_from_u64(k))) / BigRational(big_from_u64(k + 1));
  }
  return sum;
}

/// Defined iff the reduced denominator is coprime to n; holds iff
/// nu_q(S) >= e a for every q^a || n, with e = 5 (plus) or 4 (minus).
inline ScanRecord classify(std::uint64_t n, Family family, CompositeEvidence* evidence = nullptr) {
  const long e = family == Family::plus ? 5 : 4;
  BigRational s = composite_sum(n, family);
  const BigInt nb = big_from_u64(n);
  BigInt g;
  mpz_gcd(g.get_mpz_t(), s.get_den_mpz_t(), nb.get_mpz_t());
  CompositeEvidence ev{s, {}};
  std::vector<std::pair<std::string, std::int64_t>> params{{"family", family == Family::plus ? 1 : -1},
                                                           {"n", static_cast<std::int64_t>(n)}};
  ScanRecord rec{ScanTarget::composite, n, std::move(params), Valuation::exact(0), e, Verdict::undefined, "",
                 static_cast<unsigned>(e), std::nullopt, false, ""};
  long worst = kInfiniteValuation;
  std::string local;
  for (auto [q, a] : factorize(n)) {
    const long vq = rational_valuation(s, q);
    ev.local.emplace_back(q, a, vq);
    if (vq != kInfiniteValuation) worst = std::min(worst, vq >= 0 ? vq / static_cast<long>(a) : -1);
    if (!local.empty()) local += ' ';
    local += std::to_string(q) + "^" + std::to_string(a) + ":" +
             (vq == kInfiniteValuation ? std::string("inf") : std::to_string(vq));
  }
  rec.note = "nu " + local + "; num_bits " + std::to_string(mpz_sizeinbase(s.get_num_mpz_t(), 2)) +
             "; den_bits " + std::to_string(mpz_sizeinbase(s.get_den_mpz_t(), 2));
  if (g != 1) {
    rec.verdict = Verdict::undefined;
    rec.note += "; gcd(den, n) = " + g.get_str();
    rec.residual = "";
  } else {
    const BigInt modulus = pow(nb, static_cast<unsigned long>(e));
    BigInt inv, r;
    mpz_invert(inv.get_mpz_t(), s.get_den_mpz_t(), modulus.get_mpz_t());
    r = s.get_num() * inv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    rec.residual = r.get_str();
    if (s == 0) {
      rec.observed = Valuation::at_least(static_cast<unsigned>(e));
    } else {
      rec.observed = Valuation::exact(static_cast<unsigned>(std::max(0L, worst)));
    }
    rec.verdict = judge(rec.observed, e);
  }
  if (evidence) *evidence = std::move(ev);
  return rec;
}

/// classify() over the composites in [nmin, nmax], ascending.
inline std::vector<ScanRecord> search_composites(std::uint64_t nmin, std::uint64_t nmax, Family family,
                                                 unsigned workers = 1) {
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = std::max<std::uint64_t>(nmin, 4); n <= nmax; ++n) {
    if (!is_prime(n)) ns.push_back(n);
  }
  return detail::parallel_map(ns.size(), workers, [&](std::size_t i) { return classify(ns[i], family); });
}

inline unsigned default_search_workers() { return std::max(1u, detail::default_workers() / 2); }

}  // namespace supercong
