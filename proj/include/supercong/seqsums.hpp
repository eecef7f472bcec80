// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "supercong/modring.hpp"
#include "supercong/rational.hpp"

namespace supercong {

/// Exact-rational tables beyond this length are refused: numerators grow like
/// lcm(1..n).
inline constexpr std::uint64_t kExactLengthCap = 2000;

namespace detail {

inline void require_coprime_range(std::uint64_t n, const PrimePowerModulus& m) {
  if (n >= m.prime()) {
    throw error(errc::denominator_not_coprime,
                "length " + std::to_string(n) + " reaches p = " + std::to_string(m.prime()));
  }
}

inline void require_exact_cap(std::uint64_t n, std::uint64_t cap) {
  if (n > cap) throw error(errc::usage, "exact table length " + std::to_string(n) + " above cap");
}

}  // namespace detail

/// 1/k mod p^c for k = 0..n (slot 0 holds 0). One inversion, three passes.
inline std::vector<Residue> inverse_table(std::uint64_t n, const PrimePowerModulus& m) {
  detail::require_coprime_range(n, m);
  std::vector<Residue> prefix;
  prefix.reserve(n + 1);
  prefix.push_back(Residue::one(m));
  for (std::uint64_t k = 1; k <= n; ++k) {
    prefix.push_back(prefix.back() * Residue(m, static_cast<std::int64_t>(k)));
  }
  std::vector<Residue> out(n + 1, Residue::zero(m));
  Residue running = inverse(prefix.back());
  for (std::uint64_t k = n; k >= 1; --k) {
    out[k] = running * prefix[k - 1];
    running *= Residue(m, static_cast<std::int64_t>(k));
  }
  return out;
}

/// Prefix values H_0^(m) .. H_n^(m) of the harmonic numbers of one order.
struct HarmonicTable {
  unsigned order;
  PrimePowerModulus modulus;
  std::vector<Residue> values;

  const Residue& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const noexcept { return values.size(); }
  const Residue& last() const { return values.back(); }
};

inline HarmonicTable harmonic(std::uint64_t n, unsigned order, const PrimePowerModulus& m) {
  if (order == 0) throw error(errc::usage, "harmonic order must be positive");
  auto inv = inverse_table(n, m);
  HarmonicTable t{order, m, {}};
  t.values.reserve(n + 1);
  t.values.push_back(Residue::zero(m));
  for (std::uint64_t k = 1; k <= n; ++k) t.values.push_back(t.values.back() + pow(inv[k], order));
  return t;
}

inline std::vector<BigRational> harmonic_exact(std::uint64_t n, unsigned order,
                                               std::uint64_t cap = kExactLengthCap) {
  if (order == 0) throw error(errc::usage, "harmonic order must be positive");
  detail::require_exact_cap(n, cap);
  std::vector<BigRational> out;
  out.reserve(n + 1);
  out.emplace_back(0);
  for (std::uint64_t k = 1; k <= n; ++k) {
    out.push_back(out.back() + BigRational(BigInt(1), pow(big_from_u64(k), order)));
    out.back().canonicalize();
  }
  return out;
}

/// sum_{k=1}^{p-1} 1/k^s mod p^c, for 1 <= s <= p-2.
inline Residue inv_power_sum(unsigned s, const PrimePowerModulus& m) {
  const std::uint64_t p = m.prime();
  if (s < 1 || s + 2 > p) throw error(errc::usage, "inv_power_sum needs 1 <= s <= p-2");
  auto inv = inverse_table(p - 1, m);
  Residue acc = Residue::zero(m);
  for (std::uint64_t k = 1; k < p; ++k) acc += pow(inv[k], s);
  return acc;
}

/// Prefix values e_s(1, 1/2, ..., 1/k) for k = 0..n.
struct SymTable {
  unsigned degree;
  PrimePowerModulus modulus;
  std::vector<Residue> values;

  const Residue& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const noexcept { return values.size(); }
};

/// All degrees 0..s_max at once via e_s^(k) = e_s^(k-1) + e_{s-1}^(k-1)/k.
inline std::vector<SymTable> elem_sym_rows(unsigned s_max, std::uint64_t n, const PrimePowerModulus& m) {
  auto inv = inverse_table(n, m);
  std::vector<SymTable> rows;
  rows.reserve(s_max + 1);
  for (unsigned s = 0; s <= s_max; ++s) {
    rows.push_back(SymTable{s, m, {}});
    rows.back().values.reserve(n + 1);
    rows.back().values.push_back(s == 0 ? Residue::one(m) : Residue::zero(m));
  }
  for (std::uint64_t k = 1; k <= n; ++k) {
    rows[0].values.push_back(Residue::one(m));
    for (unsigned s = 1; s <= s_max; ++s) {
      rows[s].values.push_back(rows[s].values[k - 1] + inv[k] * rows[s - 1].values[k - 1]);
    }
  }
  return rows;
}

inline SymTable elem_sym(unsigned s, std::uint64_t n, const PrimePowerModulus& m) {
  return std::move(elem_sym_rows(s, n, m)[s]);
}

/// e_0..e_n of the full set {1, 1/2, ..., 1/n}: the coefficients of
/// prod_{i<=n} (1 + t/i), built one factor at a time.
inline std::vector<Residue> elem_sym_full(std::uint64_t n, const PrimePowerModulus& m) {
  auto inv = inverse_table(n, m);
  std::vector<Residue> e(n + 1, Residue::zero(m));
  e[0] = Residue::one(m);
  for (std::uint64_t k = 1; k <= n; ++k) {
    for (std::uint64_t s = k; s >= 1; --s) e[s] += inv[k] * e[s - 1];
  }
  return e;
}

inline std::vector<BigRational> elem_sym_exact(unsigned s, std::uint64_t n,
                                               std::uint64_t cap = kExactLengthCap) {
  detail::require_exact_cap(n, cap);
  std::vector<std::vector<BigRational>> rows(s + 1, std::vector<BigRational>(n + 1));
  for (std::uint64_t k = 0; k <= n; ++k) rows[0][k] = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    BigRational inv_k(BigInt(1), big_from_u64(k));
    for (unsigned d = 1; d <= s; ++d) rows[d][k] = rows[d][k - 1] + inv_k * rows[d - 1][k - 1];
  }
  return rows[s];
}

/// sum_{i<j<=k} (1/(i j^2) + 1/(i^2 j)), via H_k H_k^(2) - H_k^(3), for k = 0..n.
inline std::vector<Residue> mixed_sum_table(std::uint64_t n, const PrimePowerModulus& m) {
  auto h1 = harmonic(n, 1, m);
  auto h2 = harmonic(n, 2, m);
  auto h3 = harmonic(n, 3, m);
  std::vector<Residue> out;
  out.reserve(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) out.push_back(h1[k] * h2[k] - h3[k]);
  return out;
}

inline Residue mixed_sum_2_8(std::uint64_t k, const PrimePowerModulus& m) {
  return mixed_sum_table(k, m).back();
}

inline BigRational mixed_sum_2_8_exact(std::uint64_t k) {
  auto h1 = harmonic_exact(k, 1);
  auto h2 = harmonic_exact(k, 2);
  auto h3 = harmonic_exact(k, 3);
  return h1[k] * h2[k] - h3[k];
}

namespace brute {

inline constexpr std::uint64_t kEnumerationCap = 31;

/// e_s(1, ..., 1/k) by walking every s-subset of {1..k}.
inline BigRational subset_reciprocal_sum(unsigned s, std::uint64_t k) {
  if (k > kEnumerationCap) throw error(errc::usage, "brute-force enumeration capped at k = 31");
  if (s > k) return 0;
  if (s == 0) return 1;
  std::vector<std::uint64_t> idx(s);
  for (unsigned i = 0; i < s; ++i) idx[i] = i + 1;
  BigRational acc = 0;
  while (true) {
    BigInt prod = 1;
    for (auto i : idx) prod *= big_from_u64(i);
    acc += BigRational(BigInt(1), prod);
    int pos = static_cast<int>(s) - 1;
    while (pos >= 0 && idx[pos] == k - (s - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (unsigned j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  acc.canonicalize();
  return acc;
}

/// sum over pairs i<j<=k of 1/(i j^2) + 1/(i^2 j), by direct double loop.
inline BigRational mixed_pair_sum(std::uint64_t k) {
  BigRational acc = 0;
  for (std::uint64_t j = 2; j <= k; ++j) {
    for (std::uint64_t i = 1; i < j; ++i) {
      BigInt bi = big_from_u64(i), bj = big_from_u64(j);
      acc += BigRational(BigInt(1), bi * bj * bj) + BigRational(BigInt(1), bi * bi * bj);
    }
  }
  acc.canonicalize();
  return acc;
}

}  // namespace brute

}  // namespace supercong
