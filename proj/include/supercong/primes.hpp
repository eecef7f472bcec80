// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "supercong/error.hpp"

namespace supercong {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// sufficient for every n < 3.3e24, which covers all 64-bit inputs.
inline bool is_prime(std::uint64_t n) noexcept {
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t q : witnesses) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : witnesses) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline constexpr std::uint64_t kSieveLimit = 1'000'000'000;

/// Primes in [lo, hi] by a plain sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  if (hi > kSieveLimit) throw error(errc::usage, "prime bound too large for the sieve");
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

/// Exponent of p in n (n > 0).
inline unsigned valuation_u64(std::uint64_t n, std::uint64_t p) noexcept {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Legendre's formula: exponent of p in n!.
inline std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) noexcept {
  std::uint64_t v = 0;
  while (n != 0) {
    n /= p;
    v += n;
  }
  return v;
}

/// Prime factorisation as (q, a) pairs with q ascending.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    unsigned a = 0;
    while (n % q == 0) {
      n /= q;
      ++a;
    }
    out.emplace_back(q, a);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace supercong
