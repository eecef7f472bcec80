// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "supercong/bernoulli.hpp"
#include "supercong/detail/memo.hpp"
#include "supercong/fracbinom.hpp"
#include "supercong/modring.hpp"
#include "supercong/seqsums.hpp"
#include "supercong/statements.hpp"

namespace supercong {

struct ModularSides {
  Residue lhs;
  Residue rhs;
};

struct ExactSides {
  BigRational lhs;
  BigRational rhs;
};

namespace detail {

/// Tables shared by many statement instances at one (p, precision). Each is a
/// pure function of its key, so caching is invisible to callers.
class TableCache {
 public:
  using Table = std::vector<Residue>;

  std::shared_ptr<const Table> inverses(std::uint64_t p, unsigned c) {
    return inverses_.get({p, c}, [&] { return inverse_table(p - 1, PrimePowerModulus(p, c)); });
  }

  std::shared_ptr<const Table> harmonic(std::uint64_t p, unsigned order, unsigned c) {
    return harmonics_.get({p, order, c}, [&] {
      const auto inv = inverses(p, c);
      Table t{Residue::zero(inv->front().modulus())};
      for (std::uint64_t k = 1; k < p; ++k) t.push_back(t.back() + pow((*inv)[k], order));
      return t;
    });
  }

  /// (-1)^{km} (p/m - 1 choose k)^m for k = 0..p-1.
  std::shared_ptr<const Table> family(std::uint64_t p, std::uint64_t m, unsigned c) {
    return family_.get({p, m, c}, [&] {
      require_family(p, m);
      PrimePowerModulus ring(p, c);
      Residue x = from_rational(make_rational(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(m),
                                              static_cast<std::int64_t>(m)),
                                ring);
      return binomial_power_terms(x, m, SignMode::alternating_km, m, p - 1, c);
    });
  }

  /// (num/den choose k)^exponent for k = 0..p-1, no sign.
  std::shared_ptr<const Table> direct(std::uint64_t p, std::int64_t num, std::int64_t den, std::uint64_t exponent,
                                      unsigned c) {
    return direct_.get({p, num, den, exponent, c}, [&] {
      PrimePowerModulus ring(p, c);
      Residue x = from_rational(make_rational(num, den), ring);
      return binomial_power_terms(x, exponent, SignMode::none, 0, p - 1, c);
    });
  }

  /// e_0..e_{p-1} of {1, 1/2, ..., 1/(p-1)}.
  std::shared_ptr<const Table> sym_full(std::uint64_t p, unsigned c) {
    return sym_full_.get({p, c}, [&] { return elem_sym_full(p - 1, PrimePowerModulus(p, c)); });
  }

  /// Row s of the prefix table e_s(1..1/k), k = 0..p-1.
  std::shared_ptr<const Table> sym_prefix(std::uint64_t p, unsigned s, unsigned c) {
    return sym_prefix_.get({p, s, c}, [&] { return elem_sym(s, p - 1, PrimePowerModulus(p, c)).values; });
  }

 private:
  Memo<std::tuple<std::uint64_t, unsigned>, Table> inverses_;
  Memo<std::tuple<std::uint64_t, unsigned, unsigned>, Table> harmonics_;
  Memo<std::tuple<std::uint64_t, std::uint64_t, unsigned>, Table> family_;
  Memo<std::tuple<std::uint64_t, std::int64_t, std::int64_t, std::uint64_t, unsigned>, Table> direct_;
  Memo<std::tuple<std::uint64_t, unsigned>, Table> sym_full_;
  Memo<std::tuple<std::uint64_t, unsigned, unsigned>, Table> sym_prefix_;
};

inline TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

/// 1 + sum_{k=1}^{p-1} terms[k]; the k = 0 summand must be exactly 1.
inline Residue sum_from_zero(const std::vector<Residue>& terms) {
  if (!(terms.front() == Residue::one(terms.front().modulus()))) {
    throw error(errc::usage, "k = 0 summand is not 1");
  }
  Residue tail = Residue::zero(terms.front().modulus());
  for (std::size_t k = 1; k < terms.size(); ++k) tail += terms[k];
  return Residue::one(tail.modulus()) + tail;
}

inline std::int64_t sign_pow(std::int64_t e) { return e % 2 == 0 ? 1 : -1; }

inline std::int64_t small_binomial(std::int64_t n, std::int64_t k) {
  return static_cast<std::int64_t>(mpz_get_si(binomial(n, k).get_mpz_t()));
}

}  // namespace detail

/// Both sides of a statement instance reduced mod p^c, computed with the
/// residue pipeline: incremental tables, binomial streams, and Bernoulli
/// numbers reduced mod p^c. Sides that are p-adic integers only through a
/// hidden divisibility (H_{p-1}/p and H_{p-1}/p^2) are evaluated at extra
/// precision and divided exactly.
inline ModularSides evaluate_modular(StatementId id, const Params& q, unsigned c) {
  const Statement& st = statement(id);
  if (!st.applicable(q)) throw error(errc::not_applicable, std::string(st.name) + " at " + q.to_string());

  auto& cache = detail::table_cache();
  const std::uint64_t p = q.p;
  const auto pi = static_cast<std::int64_t>(p);
  PrimePowerModulus ring(p, c);
  auto R = [&](std::int64_t v) { return Residue(ring, v); };
  auto Q = [&](std::int64_t num, std::int64_t den) { return from_rational(make_rational(num, den), ring); };
  auto P = [&](unsigned e) { return Residue(ring, pow(big_from_u64(p), e)); };
  auto B = [&](std::int64_t idx) { return bernoulli_mod(static_cast<std::size_t>(idx), ring); };
  auto zero = Residue::zero(ring);

  // sum_{k=1}^{p-1} a[k] / k^e
  auto weighted = [&](const std::vector<Residue>& a, std::uint64_t e) {
    auto inv = cache.inverses(p, c);
    Residue acc = zero;
    for (std::uint64_t k = 1; k < p; ++k) acc += a[k] * pow((*inv)[k], e);
    return acc;
  };
  auto tail_sum = [&](const std::vector<Residue>& a) {
    Residue acc = zero;
    for (std::uint64_t k = 1; k < p; ++k) acc += a[k];
    return acc;
  };
  auto harmonic_at = [&](unsigned order, unsigned precision) { return cache.harmonic(p, order, precision)->back(); };

  switch (id) {
    case StatementId::T1_1:
    case StatementId::R1_4: {
      Residue lhs = detail::sum_from_zero(*cache.direct(p, -1, pi + 1, p + 1, c));
      Residue rhs = id == StatementId::T1_1 ? zero : P(5) * Q(1, 18) * B(pi - 3);
      return {lhs, rhs};
    }
    case StatementId::T1_2:
      return {detail::sum_from_zero(*cache.family(p, static_cast<std::uint64_t>(*q.m), c)), zero};
    case StatementId::C1_3:
    case StatementId::R1_5: {
      Residue lhs = detail::sum_from_zero(*cache.direct(p, 1, pi - 1, p - 1, c));
      Residue rhs = id == StatementId::C1_3 ? zero : Q(2, 3) * P(4) * B(pi - 3);
      return {lhs, rhs};
    }
    case StatementId::T1_3_6: {
      Residue lhs = weighted(*cache.family(p, static_cast<std::uint64_t>(*q.m), c), 2);
      Residue rhs = exact_div_by_p(harmonic_at(1, c + 1), 1);
      return {lhs, rhs};
    }
    case StatementId::T1_3_7: {
      const std::int64_t n = *q.n;
      Residue lhs = weighted(*cache.family(p, static_cast<std::uint64_t>(*q.m), c), 2 * n);
      return {lhs, -(P(1) * Q(1, 2 * n + 1) * B(pi - 1 - 2 * n))};
    }
    case StatementId::T1_3_8: {
      const std::int64_t n = *q.n, m = *q.m;
      Residue lhs = weighted(*cache.family(p, static_cast<std::uint64_t>(m), c), 2 * n - 1);
      Residue factor = R(1) + Q(1 - m, 2 * m) * R(2 * n + 1);
      return {lhs, factor * P(2) * Q(n, 2 * n + 1) * B(pi - 1 - 2 * n)};
    }
    case StatementId::R1_9: {
      const std::int64_t n = *q.n;
      Residue lhs = weighted(*cache.direct(p, 1, pi - 1, p - 1, c), 2 * n - 1);
      return {lhs, -(Q(2 * n * n, 2 * n + 1) * P(2) * B(pi - 1 - 2 * n))};
    }
    case StatementId::R1_10: {
      const std::int64_t n = *q.n;
      Residue lhs = weighted(*cache.direct(p, -1, pi + 1, p + 1, c), 2 * n - 1);
      return {lhs, Q(n, 2 * n + 1) * P(2) * B(pi - 1 - 2 * n)};
    }
    case StatementId::L2_1a:
      return {harmonic_at(1, c), -(P(2) * Q(1, 3) * B(pi - 3))};
    case StatementId::L2_1b:
      return {harmonic_at(2, c), Q(2, 3) * P(1) * B(pi - 3)};
    case StatementId::L2_2: {
      const std::int64_t k = *q.k;
      Residue lhs = (*cache.sym_full(p, c))[static_cast<std::size_t>(k)];
      return {lhs, Q(detail::sign_pow(k - 1) * pi, k + 1) * B(pi - 1 - k)};
    }
    case StatementId::L2_3:
      return {tail_sum(*cache.harmonic(p, 1, c)), -(P(3) * Q(1, 3) * B(pi - 3)) - P(1) + R(1)};
    case StatementId::L2_4a:
      return {tail_sum(*cache.harmonic(p, 2, c)), zero};
    case StatementId::L2_4b:
      return {tail_sum(*cache.harmonic(p, 3, c)), zero};
    case StatementId::L2_5:
      return {tail_sum(*cache.sym_prefix(p, 2, c)), -(Q(2, 3) * P(2) * B(pi - 3)) + P(1) - R(1)};
    case StatementId::L2_6:
      return {tail_sum(*cache.sym_prefix(p, 3, c)), -(Q(1, 3) * P(1) * B(pi - 3)) - P(1) + R(1)};
    case StatementId::L2_7:
      return {tail_sum(*cache.sym_prefix(p, 4, c)), R(-1)};
    case StatementId::L2_8: {
      auto h1 = cache.harmonic(p, 1, c), h2 = cache.harmonic(p, 2, c), h3 = cache.harmonic(p, 3, c);
      Residue acc = zero;
      for (std::uint64_t k = 1; k < p; ++k) acc += (*h1)[k] * (*h2)[k] - (*h3)[k];
      return {acc, zero};
    }
    case StatementId::L3_1a: {
      const std::int64_t m = *q.m, n = *q.n;
      Residue lhs = weighted(*cache.harmonic(p, static_cast<unsigned>(m), c), 2 * n + 1 - m);
      Residue rhs = R(detail::sign_pow(m - 1)) * Q(detail::small_binomial(2 * n + 1, m), 2 * n + 1) *
                    B(pi - 1 - 2 * n);
      return {lhs, rhs};
    }
    case StatementId::L3_1b: {
      const std::int64_t m = *q.m, n = *q.n;
      Residue lhs = weighted(*cache.harmonic(p, static_cast<unsigned>(m), c), 2 * n - m);
      Residue inner = R(n) + R(detail::sign_pow(m)) * Q((n - m) * detail::small_binomial(2 * n + 1, m), m + 1);
      return {lhs, P(1) * B(pi - 1 - 2 * n) * Q(1, 2 * n + 1) * inner};
    }
    case StatementId::E3_3: {
      const std::int64_t s = *q.s;
      return {inv_power_sum(static_cast<unsigned>(s), ring), P(1) * Q(s, s + 1) * B(pi - 1 - s)};
    }
    case StatementId::L3_2: {
      auto h1 = cache.harmonic(p, 1, c);
      std::vector<Residue> a;
      a.reserve(p);
      for (std::uint64_t k = 0; k < p; ++k) a.push_back(R(1) - P(1) * (*h1)[k]);
      return {weighted(a, 2), exact_div_by_p(harmonic_at(1, c + 1), 1)};
    }
    case StatementId::R3_1a:
      return {weighted(*cache.harmonic(p, 1, c), 2), B(pi - 3)};
    case StatementId::R3_1b:
      return {weighted(*cache.harmonic(p, 1, c), 3), -(P(1) * Q(1, 10) * B(pi - 5))};
    case StatementId::A_SU3: {
      auto h1 = cache.harmonic(p, 1, c);
      std::vector<Residue> a;
      a.reserve(p);
      for (std::uint64_t k = 0; k < p; ++k) a.push_back((*h1)[k] * (*h1)[k]);
      return {weighted(a, 2), zero};
    }
    case StatementId::A_T23: {
      auto h1 = cache.harmonic(p, 1, c);
      std::vector<Residue> shifted{zero};
      for (std::uint64_t k = 1; k < p; ++k) shifted.push_back((*h1)[k - 1]);
      return {weighted(shifted, 2), R(-3) * exact_div_by_p(harmonic_at(1, c + 2), 2)};
    }
    case StatementId::W_PAIR: {
      if (*q.part == 1) return {harmonic_at(1, c), zero};
      auto inv = cache.inverses(p, c);
      Residue prod = R(1);
      for (std::uint64_t j = 1; j < p; ++j) prod *= R(pi + static_cast<std::int64_t>(j)) * (*inv)[j];
      return {prod, R(1)};
    }
  }
  throw error(errc::usage, "unknown statement");
}

namespace detail {

inline constexpr std::uint64_t kExactPrimeCap = 31;

inline BigRational rat(std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); }

inline BigRational inv_pow(std::uint64_t k, std::uint64_t e) {
  return BigRational(BigInt(1), pow(big_from_u64(k), static_cast<unsigned long>(e)));
}

inline BigRational harmonic_direct(std::uint64_t n, unsigned order) {
  BigRational acc = 0;
  for (std::uint64_t j = 1; j <= n; ++j) acc += inv_pow(j, order);
  return acc;
}

/// sum_{k=k0}^{p-1} sign(k) C(x,k)^e / k^w, straight from the product formula.
inline BigRational binomial_power_sum(const BigRational& x, std::uint64_t e, bool alternate_km, std::uint64_t m,
                                      std::uint64_t p, std::uint64_t k0, std::uint64_t w) {
  BigRational acc = 0;
  for (std::uint64_t k = k0; k < p; ++k) {
    BigRational t = pow(binom_exact(x, k), static_cast<unsigned long>(e));
    if (alternate_km && (k * m) % 2 == 1) t = -t;
    if (w != 0) t *= inv_pow(k, w);
    acc += t;
  }
  return acc;
}

}  // namespace detail

/// Both sides as exact rationals, from the definitions: product-formula
/// binomials, direct harmonic sums, subset enumeration for the symmetric
/// sums, and the Bernoulli cache. Only for p <= 31.
inline ExactSides evaluate_exact(StatementId id, const Params& q) {
  using detail::binomial_power_sum;
  using detail::harmonic_direct;
  using detail::inv_pow;
  using detail::rat;
  const Statement& st = statement(id);
  if (!st.applicable(q)) throw error(errc::not_applicable, std::string(st.name) + " at " + q.to_string());
  const std::uint64_t p = q.p;
  if (p > detail::kExactPrimeCap) throw error(errc::usage, "exact evaluation is limited to p <= 31");
  const auto pi = static_cast<std::int64_t>(p);
  auto B = [](std::int64_t idx) { return bernoulli_exact(static_cast<std::size_t>(idx)); };
  auto P = [&](unsigned e) { return BigRational(pow(big_from_u64(p), e)); };
  const BigRational x_plus = rat(-1, pi + 1);   // p/(p+1) - 1
  const BigRational x_minus = rat(1, pi - 1);   // p/(p-1) - 1
  auto family_x = [&](std::int64_t m) -> BigRational { return rat(pi, m) - 1; };

  switch (id) {
    case StatementId::T1_1:
    case StatementId::R1_4: {
      BigRational lhs = binomial_power_sum(x_plus, p + 1, false, 0, p, 0, 0);
      return {lhs, id == StatementId::T1_1 ? BigRational(0) : P(5) * B(pi - 3) / 18};
    }
    case StatementId::T1_2: {
      const auto m = static_cast<std::uint64_t>(*q.m);
      return {binomial_power_sum(family_x(*q.m), m, true, m, p, 0, 0), 0};
    }
    case StatementId::C1_3:
    case StatementId::R1_5: {
      BigRational lhs = binomial_power_sum(x_minus, p - 1, false, 0, p, 0, 0);
      return {lhs, id == StatementId::C1_3 ? BigRational(0) : rat(2, 3) * P(4) * B(pi - 3)};
    }
    case StatementId::T1_3_6: {
      const auto m = static_cast<std::uint64_t>(*q.m);
      return {binomial_power_sum(family_x(*q.m), m, true, m, p, 1, 2), harmonic_direct(p - 1, 1) / P(1)};
    }
    case StatementId::T1_3_7: {
      const auto m = static_cast<std::uint64_t>(*q.m);
      const std::int64_t n = *q.n;
      return {binomial_power_sum(family_x(*q.m), m, true, m, p, 1, 2 * n),
              -P(1) * B(pi - 1 - 2 * n) / (2 * n + 1)};
    }
    case StatementId::T1_3_8: {
      const std::int64_t m = *q.m, n = *q.n;
      BigRational lhs = binomial_power_sum(family_x(m), static_cast<std::uint64_t>(m), true,
                                           static_cast<std::uint64_t>(m), p, 1, 2 * n - 1);
      BigRational factor = 1 + rat(1 - m, 2 * m) * (2 * n + 1);
      return {lhs, factor * P(2) * n * B(pi - 1 - 2 * n) / (2 * n + 1)};
    }
    case StatementId::R1_9: {
      const std::int64_t n = *q.n;
      return {binomial_power_sum(x_minus, p - 1, false, 0, p, 1, 2 * n - 1),
              -2 * P(2) * n * n * B(pi - 1 - 2 * n) / (2 * n + 1)};
    }
    case StatementId::R1_10: {
      const std::int64_t n = *q.n;
      return {binomial_power_sum(x_plus, p + 1, false, 0, p, 1, 2 * n - 1),
              P(2) * n * B(pi - 1 - 2 * n) / (2 * n + 1)};
    }
    case StatementId::L2_1a:
      return {harmonic_direct(p - 1, 1), -P(2) * B(pi - 3) / 3};
    case StatementId::L2_1b:
      return {harmonic_direct(p - 1, 2), rat(2, 3) * P(1) * B(pi - 3)};
    case StatementId::L2_2: {
      const std::int64_t k = *q.k;
      return {brute::subset_reciprocal_sum(static_cast<unsigned>(k), p - 1),
              rat(detail::sign_pow(k - 1) * pi, k + 1) * B(pi - 1 - k)};
    }
    case StatementId::L2_3:
    case StatementId::L2_4a:
    case StatementId::L2_4b: {
      const unsigned order = id == StatementId::L2_3 ? 1 : id == StatementId::L2_4a ? 2 : 3;
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += harmonic_direct(k, order);
      BigRational rhs = id == StatementId::L2_3 ? -P(3) * B(pi - 3) / 3 - pi + 1 : BigRational(0);
      return {lhs, rhs};
    }
    case StatementId::L2_5:
    case StatementId::L2_6:
    case StatementId::L2_7: {
      const unsigned s = id == StatementId::L2_5 ? 2 : id == StatementId::L2_6 ? 3 : 4;
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += brute::subset_reciprocal_sum(s, k);
      BigRational rhs = id == StatementId::L2_5   ? -rat(2, 3) * P(2) * B(pi - 3) + pi - 1
                        : id == StatementId::L2_6 ? -P(1) * B(pi - 3) / 3 - pi + 1
                                                  : BigRational(-1);
      return {lhs, rhs};
    }
    case StatementId::L2_8: {
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += brute::mixed_pair_sum(k);
      return {lhs, 0};
    }
    case StatementId::L3_1a:
    case StatementId::L3_1b: {
      const std::int64_t m = *q.m, n = *q.n;
      const std::int64_t w = id == StatementId::L3_1a ? 2 * n + 1 - m : 2 * n - m;
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += harmonic_direct(k, static_cast<unsigned>(m)) * inv_pow(k, w);
      const BigRational binom = BigRational(binomial(2 * n + 1, m));
      BigRational rhs;
      if (id == StatementId::L3_1a) {
        rhs = detail::sign_pow(m - 1) * binom * B(pi - 1 - 2 * n) / (2 * n + 1);
      } else {
        rhs = P(1) * B(pi - 1 - 2 * n) / (2 * n + 1) * (n + detail::sign_pow(m) * rat(n - m, m + 1) * binom);
      }
      return {lhs, rhs};
    }
    case StatementId::E3_3: {
      const std::int64_t s = *q.s;
      return {harmonic_direct(p - 1, static_cast<unsigned>(s)), P(1) * rat(s, s + 1) * B(pi - 1 - s)};
    }
    case StatementId::L3_2: {
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += (1 - P(1) * harmonic_direct(k, 1)) * inv_pow(k, 2);
      return {lhs, harmonic_direct(p - 1, 1) / P(1)};
    }
    case StatementId::R3_1a:
    case StatementId::R3_1b: {
      const unsigned w = id == StatementId::R3_1a ? 2 : 3;
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) lhs += harmonic_direct(k, 1) * inv_pow(k, w);
      return {lhs, id == StatementId::R3_1a ? B(pi - 3) : -P(1) * B(pi - 5) / 10};
    }
    case StatementId::A_SU3: {
      BigRational lhs = 0;
      for (std::uint64_t k = 1; k < p; ++k) {
        BigRational h = harmonic_direct(k, 1);
        lhs += h * h * inv_pow(k, 2);
      }
      return {lhs, 0};
    }
    case StatementId::A_T23: {
      BigRational lhs = 0;
      for (std::uint64_t k = 2; k < p; ++k) {
        for (std::uint64_t j = 1; j < k; ++j) lhs += inv_pow(j, 1) * inv_pow(k, 2);
      }
      return {lhs, -3 * harmonic_direct(p - 1, 1) / P(2)};
    }
    case StatementId::W_PAIR:
      if (*q.part == 1) return {harmonic_direct(p - 1, 1), 0};
      return {BigRational(binomial(2 * p - 1, p - 1)), 1};
  }
  throw error(errc::usage, "unknown statement");
}

}  // namespace supercong
