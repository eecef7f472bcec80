// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

#include "supercong/error.hpp"

namespace supercong {

using BigInt = mpz_class;

/// Exact rational. mpq_class keeps the canonical form (reduced, positive
/// denominator) as long as every value is built through make_rational or
/// arithmetic on canonical operands.
using BigRational = mpq_class;

inline BigInt big_from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
  return out;
}

inline BigInt big_from_i64(std::int64_t v) {
  BigInt out = big_from_u64(v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v));
  if (v < 0) out = -out;
  return out;
}

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw error(errc::usage, "zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigRational make_rational(std::int64_t num, std::int64_t den = 1) {
  return make_rational(big_from_i64(num), big_from_i64(den));
}

inline BigRational pow(const BigRational& q, unsigned long e) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  // gcd(num^e, den^e) = 1 already
  BigRational out;
  out.get_num() = num;
  out.get_den() = den;
  return out;
}

inline BigInt pow(const BigInt& b, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// (x choose k) = x(x-1)...(x-k+1)/k! over the rationals.
inline BigRational binom_exact(const BigRational& x, std::uint64_t k) {
  BigRational acc = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    acc *= (x - BigRational(big_from_u64(j - 1))) / BigRational(big_from_u64(j));
  }
  return acc;
}

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// Exponent of p in a nonzero integer; kInfiniteValuation for zero.
inline long integer_valuation(const BigInt& n, std::uint64_t p) {
  if (n == 0) return kInfiniteValuation;
  BigInt rest;
  BigInt prime = big_from_u64(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

/// nu_p(num) - nu_p(den); kInfiniteValuation when q = 0.
inline long rational_valuation(const BigRational& q, std::uint64_t p) {
  if (q == 0) return kInfiniteValuation;
  return integer_valuation(q.get_num(), p) - integer_valuation(q.get_den(), p);
}

inline std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace supercong
