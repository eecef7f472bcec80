// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "supercong/modring.hpp"
#include "supercong/primes.hpp"

namespace supercong {

/// One entry of a binomial stream: (x choose k) known modulo p^precision.
struct BinomEntry {
  Residue value;
  unsigned precision;
};

/// Walks (x choose k) for k = 0, 1, 2, ... with x a p-adic integer given as a
/// residue. Each step multiplies by (x - k + 1) and divides by k exactly, so a
/// factor p^{nu_p(k)} of precision is spent per step. Throws
/// PrecisionExhausted once the precision would drop below `target`.
class BinomGenerator {
 public:
  BinomGenerator(Residue x, unsigned target)
      : x_(std::move(x)), target_(target), entry_{Residue::one(x_.modulus()), x_.modulus().exponent()} {
    if (target_ == 0 || target_ > entry_.precision) {
      throw error(errc::precision_exhausted, "upper argument carries less precision than the target");
    }
  }

  std::uint64_t index() const noexcept { return k_; }
  const BinomEntry& current() const noexcept { return entry_; }

  /// Current value reduced to the target precision.
  Residue value() const { return truncate(entry_.value, target_); }

  void advance() {
    const std::uint64_t p = x_.modulus().prime();
    const std::uint64_t next = k_ + 1;
    const unsigned drop = valuation_u64(next, p);
    if (entry_.precision < target_ + drop) {
      throw error(errc::precision_exhausted,
                  "binomial stream at k = " + std::to_string(next) + " needs more padding");
    }
    const auto& ring = entry_.value.modulus();
    Residue x = ring == x_.modulus() ? x_ : truncate(x_, entry_.precision);
    Residue v = entry_.value * (x - Residue(ring, static_cast<std::int64_t>(k_)));
    std::uint64_t unit = next;
    if (drop > 0) {
      v = exact_div_by_p(v, drop);
      for (unsigned i = 0; i < drop; ++i) unit /= p;
    }
    v *= inverse(Residue(v.modulus(), static_cast<std::int64_t>(unit)));
    entry_ = BinomEntry{std::move(v), entry_.precision - drop};
    k_ = next;
  }

 private:
  Residue x_;
  unsigned target_;
  BinomEntry entry_;
  std::uint64_t k_ = 0;
};

/// Materialised binomial stream; entries k = 0..kmax.
struct BinomStream {
  Residue x;
  std::uint64_t kmax;
  std::vector<BinomEntry> values;
};

/// Requires x to carry at least target + nu_p(kmax!) digits.
inline BinomStream binom_stream(const Residue& x, std::uint64_t kmax, unsigned target) {
  const auto& m = x.modulus();
  const std::uint64_t pad = factorial_valuation(kmax, m.prime());
  if (m.exponent() < target + pad) {
    throw error(errc::precision_exhausted, "binom_stream needs " + std::to_string(target + pad) +
                                               " digits, upper argument has " +
                                               std::to_string(m.exponent()));
  }
  BinomStream s{x, kmax, {}};
  s.values.reserve(kmax + 1);
  BinomGenerator gen(x, target);
  s.values.push_back(gen.current());
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    gen.advance();
    s.values.push_back(gen.current());
  }
  return s;
}

/// (num/den choose k) for integers num, den with p not dividing den, held as
/// p^v * unit. Every factor (num - j den) is an exact integer, so its
/// valuation is read off directly and the unit part never loses precision.
class RationalBinomGenerator {
 public:
  RationalBinomGenerator(std::int64_t num, std::int64_t den, const PrimePowerModulus& m)
      : num_(num), den_(den), unit_(Residue::one(m)), den_inv_(Residue::one(m)) {
    if (den == 0 || static_cast<std::uint64_t>(den < 0 ? -den : den) % m.prime() == 0) {
      throw error(errc::denominator_not_coprime, "upper argument denominator shares p");
    }
    den_inv_ = inverse(Residue(m, den));
  }

  std::uint64_t index() const noexcept { return k_; }
  bool is_zero() const noexcept { return zero_; }
  /// nu_p of the current binomial; meaningless once is_zero().
  std::uint64_t valuation() const noexcept { return static_cast<std::uint64_t>(v_); }
  const Residue& unit() const noexcept { return unit_; }

  Residue value() const { return power(1); }

  /// (x choose k)^t mod p^c.
  Residue power(std::uint64_t t) const {
    const auto& m = unit_.modulus();
    if (t == 0) return Residue::one(m);
    if (zero_) return Residue::zero(m);
    const unsigned __int128 vt = static_cast<unsigned __int128>(v_) * t;
    if (vt >= m.exponent()) return Residue::zero(m);
    return mul_by_p_power(pow(unit_, t), static_cast<unsigned>(vt));
  }

  void advance() {
    const auto& m = unit_.modulus();
    const std::uint64_t p = m.prime();
    const __int128 f = static_cast<__int128>(num_) - static_cast<__int128>(k_) * den_;
    ++k_;
    if (zero_) return;
    if (f == 0) {
      zero_ = true;
      return;
    }
    unsigned __int128 a = f < 0 ? static_cast<unsigned __int128>(-f) : static_cast<unsigned __int128>(f);
    while (a % p == 0) {
      a /= p;
      ++v_;
    }
    std::uint64_t d = k_;
    while (d % p == 0) {
      d /= p;
      --v_;
    }
    Residue fac = a <= static_cast<unsigned __int128>(INT64_MAX)
                      ? Residue(m, static_cast<std::int64_t>(a))
                      : Residue(m, BigInt(big_from_u64(static_cast<std::uint64_t>(a >> 64)) * pow(BigInt(2), 64) +
                                          big_from_u64(static_cast<std::uint64_t>(a))));
    if (f < 0) fac = -fac;
    unit_ *= fac * den_inv_ * inverse(Residue(m, static_cast<std::int64_t>(d)));
    if (v_ < 0) throw error(errc::usage, "binomial of a p-adic integer cannot have negative valuation");
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
  Residue unit_;
  Residue den_inv_;
  std::int64_t v_ = 0;
  std::uint64_t k_ = 0;
  bool zero_ = false;
};

enum class SignMode {
  none,         // +1
  alternating,  // (-1)^k
  alternating_km,  // (-1)^{km}
};

inline bool sign_is_negative(SignMode mode, std::uint64_t k, std::uint64_t m) noexcept {
  switch (mode) {
    case SignMode::none: return false;
    case SignMode::alternating: return (k & 1) != 0;
    case SignMode::alternating_km: return ((k & 1) != 0) && ((m & 1) != 0);
  }
  return false;
}

/// sign(k) * (x choose k)^exponent mod p^target for k = 0..kmax, streamed
/// through BinomGenerator. x must carry target + nu_p(kmax!) digits.
inline std::vector<Residue> binomial_power_terms(const Residue& x, std::uint64_t exponent, SignMode sign,
                                                 std::uint64_t sign_m, std::uint64_t kmax, unsigned target) {
  if (x.modulus().exponent() < target + factorial_valuation(kmax, x.modulus().prime())) {
    throw error(errc::precision_exhausted, "insufficient padding for binomial terms");
  }
  std::vector<Residue> out;
  out.reserve(kmax + 1);
  BinomGenerator gen(x, target);
  for (std::uint64_t k = 0;; ++k) {
    Residue t = pow(gen.value(), exponent);
    out.push_back(sign_is_negative(sign, k, sign_m) ? -t : t);
    if (k == kmax) break;
    gen.advance();
  }
  return out;
}

/// (-1)^{km} (p/m - 1 choose k)^m mod p^c, the summand shared by the
/// family sums.
struct FamilyTerm {
  std::uint64_t p;
  std::uint64_t m;
  std::uint64_t k;
  unsigned c;
  Residue value;
};

inline void require_family(std::uint64_t p, std::uint64_t m) {
  if (m == 0 || m % p == 0) {
    throw error(errc::invalid_family, "m = " + std::to_string(m) + " is divisible by p = " + std::to_string(p));
  }
}

inline FamilyTerm family_term(std::uint64_t p, std::uint64_t m, std::uint64_t k, unsigned c) {
  require_family(p, m);
  const unsigned pad = static_cast<unsigned>(factorial_valuation(k, p));
  PrimePowerModulus ring(p, c + pad);
  Residue x = from_rational(make_rational(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(m),
                                          static_cast<std::int64_t>(m)),
                            ring);
  BinomGenerator gen(x, c);
  while (gen.index() < k) gen.advance();
  Residue t = pow(gen.value(), m);
  if (sign_is_negative(SignMode::alternating_km, k, m)) t = -t;
  return FamilyTerm{p, m, k, c, std::move(t)};
}

/// sign * (r/m choose k)^t mod p^c.
inline Residue conjecture_term(std::uint64_t p, std::uint64_t m, std::int64_t r, std::uint64_t k,
                               std::uint64_t t, SignMode sign, unsigned c) {
  require_family(p, m);
  RationalBinomGenerator gen(r, static_cast<std::int64_t>(m), PrimePowerModulus(p, c));
  while (gen.index() < k) gen.advance();
  Residue v = gen.power(t);
  return sign_is_negative(sign, k, m) ? -v : v;
}

}  // namespace supercong
