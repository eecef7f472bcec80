// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "supercong/error.hpp"
#include "supercong/primes.hpp"
#include "supercong/rational.hpp"

namespace supercong {

/// The ring Z/p^cZ. A cheap handle: copies share one immutable record.
///
/// When p^c < 2^63 every residue in this ring is held in a single machine
/// word and products go through 128-bit intermediates; otherwise residues are
/// GMP integers. The choice is made here, once, and is invisible to callers.
class PrimePowerModulus {
 public:
  PrimePowerModulus(std::uint64_t p, unsigned c) {
    if (c == 0) throw error(errc::usage, "modulus exponent must be positive");
    if (!is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not prime");
    d_ = make(p, c);
  }

  std::uint64_t prime() const noexcept { return d_->p; }
  unsigned exponent() const noexcept { return d_->c; }
  const BigInt& value() const noexcept { return d_->modulus; }
  bool word_sized() const noexcept { return d_->word_sized; }
  std::uint64_t word() const noexcept { return d_->word; }

  /// Same prime, different exponent; skips the primality check.
  PrimePowerModulus with_exponent(unsigned c) const {
    if (c == 0) throw error(errc::usage, "modulus exponent must be positive");
    if (c == d_->c) return *this;
    return PrimePowerModulus(make(d_->p, c));
  }

  std::string to_string() const {
    return std::to_string(d_->p) + "^" + std::to_string(d_->c);
  }

  friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) noexcept {
    return a.d_ == b.d_ || (a.d_->p == b.d_->p && a.d_->c == b.d_->c);
  }

 private:
  struct Data {
    std::uint64_t p;
    unsigned c;
    BigInt modulus;
    bool word_sized;
    std::uint64_t word;
  };

  explicit PrimePowerModulus(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static std::shared_ptr<const Data> make(std::uint64_t p, unsigned c) {
    BigInt m = pow(big_from_u64(p), c);
    bool small = mpz_sizeinbase(m.get_mpz_t(), 2) <= 63;
    std::uint64_t w = small ? mpz_get_ui(m.get_mpz_t()) : 0;
    return std::make_shared<const Data>(Data{p, c, std::move(m), small, w});
  }

  std::shared_ptr<const Data> d_;
};

/// p-adic valuation of a residual. A zero residue mod p^c only tells us the
/// true valuation is at least c.
struct Valuation {
  enum class Kind { exact, at_least };

  Kind kind = Kind::exact;
  unsigned amount = 0;

  static constexpr Valuation exact(unsigned v) noexcept { return {Kind::exact, v}; }
  static constexpr Valuation at_least(unsigned v) noexcept { return {Kind::at_least, v}; }

  bool is_exact() const noexcept { return kind == Kind::exact; }
  bool satisfies(long claimed) const noexcept { return static_cast<long>(amount) >= claimed; }

  std::string to_string() const {
    return (kind == Kind::exact ? "" : ">=") + std::to_string(amount);
  }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// An element of Z/p^cZ, always held as its canonical representative in [0, p^c).
class Residue {
 public:
  Residue(const PrimePowerModulus& m, std::int64_t v) : mod_(m) {
    if (m.word_sized()) {
      auto w = static_cast<__int128>(v) % static_cast<__int128>(m.word());
      if (w < 0) w += m.word();
      rep_ = static_cast<std::uint64_t>(w);
    } else {
      rep_ = normalize(big_from_i64(v));
    }
  }

  Residue(const PrimePowerModulus& m, const BigInt& v) : mod_(m) {
    if (m.word_sized()) {
      rep_ = static_cast<std::uint64_t>(mpz_fdiv_ui(v.get_mpz_t(), m.word()));
    } else {
      rep_ = normalize(v);
    }
  }

  static Residue zero(const PrimePowerModulus& m) { return Residue(m, std::int64_t{0}); }
  static Residue one(const PrimePowerModulus& m) { return Residue(m, std::int64_t{1}); }

  const PrimePowerModulus& modulus() const noexcept { return mod_; }

  BigInt value() const {
    if (auto w = std::get_if<std::uint64_t>(&rep_)) return big_from_u64(*w);
    return std::get<BigInt>(rep_);
  }

  /// Raw representative; only meaningful when modulus().word_sized().
  std::uint64_t word_value() const { return std::get<std::uint64_t>(rep_); }

  bool is_zero() const {
    if (auto w = std::get_if<std::uint64_t>(&rep_)) return *w == 0;
    return std::get<BigInt>(rep_) == 0;
  }

  std::string to_string() const { return value().get_str(); }

  Residue& operator+=(const Residue& o) {
    check_same(o);
    if (auto w = std::get_if<std::uint64_t>(&rep_)) {
      std::uint64_t s = *w + std::get<std::uint64_t>(o.rep_);
      if (s >= mod_.word()) s -= mod_.word();
      *w = s;
    } else {
      BigInt& b = std::get<BigInt>(rep_);
      b += std::get<BigInt>(o.rep_);
      if (b >= mod_.value()) b -= mod_.value();
    }
    return *this;
  }

  Residue& operator-=(const Residue& o) {
    check_same(o);
    if (auto w = std::get_if<std::uint64_t>(&rep_)) {
      std::uint64_t r = std::get<std::uint64_t>(o.rep_);
      *w = *w >= r ? *w - r : *w + (mod_.word() - r);
    } else {
      BigInt& b = std::get<BigInt>(rep_);
      b -= std::get<BigInt>(o.rep_);
      if (b < 0) b += mod_.value();
    }
    return *this;
  }

  Residue& operator*=(const Residue& o) {
    check_same(o);
    if (auto w = std::get_if<std::uint64_t>(&rep_)) {
      *w = detail::mulmod_u64(*w, std::get<std::uint64_t>(o.rep_), mod_.word());
    } else {
      BigInt& b = std::get<BigInt>(rep_);
      b *= std::get<BigInt>(o.rep_);
      mpz_mod(b.get_mpz_t(), b.get_mpz_t(), mod_.value().get_mpz_t());
    }
    return *this;
  }

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend Residue operator-(const Residue& a) { return zero(a.mod_) - a; }

  friend bool operator==(const Residue& a, const Residue& b) {
    return a.mod_ == b.mod_ && a.rep_ == b.rep_;
  }

 private:
  BigInt normalize(BigInt v) const {
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), mod_.value().get_mpz_t());
    return v;
  }

  void check_same(const Residue& o) const {
    if (!(mod_ == o.mod_)) {
      throw error(errc::modulus_mismatch, mod_.to_string() + " vs " + o.mod_.to_string());
    }
  }

  PrimePowerModulus mod_;
  std::variant<std::uint64_t, BigInt> rep_;
};

/// Multiplicative inverse; the argument must be a p-adic unit.
inline Residue inverse(const Residue& a) {
  const auto& m = a.modulus();
  if (m.word_sized()) {
    std::uint64_t v = a.word_value();
    if (v % m.prime() == 0) {
      throw error(errc::not_invertible, std::to_string(v) + " mod " + m.to_string());
    }
    __int128 t = 0, nt = 1;
    __int128 r = m.word(), nr = v;
    while (nr != 0) {
      __int128 q = r / nr;
      __int128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += m.word();
    return Residue(m, static_cast<std::int64_t>(t));
  }
  BigInt v = a.value();
  if (mpz_divisible_ui_p(v.get_mpz_t(), m.prime())) {
    throw error(errc::not_invertible, v.get_str() + " mod " + m.to_string());
  }
  BigInt out;
  mpz_invert(out.get_mpz_t(), v.get_mpz_t(), m.value().get_mpz_t());
  return Residue(m, out);
}

/// Reduction of a rational with p-coprime denominator.
inline Residue from_rational(const BigRational& q, const PrimePowerModulus& m) {
  if (mpz_divisible_ui_p(q.get_den_mpz_t(), m.prime())) {
    throw error(errc::denominator_not_coprime, to_string(q) + " at p = " + std::to_string(m.prime()));
  }
  return Residue(m, q.get_num()) * inverse(Residue(m, q.get_den()));
}

inline Residue pow(Residue base, std::uint64_t e) {
  Residue acc = Residue::one(base.modulus());
  while (e != 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return acc;
}

/// Canonical image of a in Z/p^{c'}Z for c' <= c.
inline Residue truncate(const Residue& a, unsigned c) {
  if (c > a.modulus().exponent()) throw error(errc::precision_exhausted, "cannot raise precision by truncation");
  if (c == a.modulus().exponent()) return a;
  if (a.modulus().word_sized()) {
    PrimePowerModulus m = a.modulus().with_exponent(c);
    return Residue(m, static_cast<std::int64_t>(a.word_value() % m.word()));
  }
  return Residue(a.modulus().with_exponent(c), a.value());
}

/// Multiply by p^v inside the same ring.
inline Residue mul_by_p_power(const Residue& a, unsigned v) {
  const auto& m = a.modulus();
  return a * Residue(m, pow(big_from_u64(m.prime()), v));
}

/// Divide a residue whose representative is divisible by p^v; the result lives
/// mod p^{c-v}.
inline Residue exact_div_by_p(const Residue& a, unsigned v) {
  const auto& m = a.modulus();
  if (v >= m.exponent()) {
    throw error(errc::precision_exhausted,
                "dividing by p^" + std::to_string(v) + " in " + m.to_string());
  }
  BigInt value = a.value();
  BigInt pv = pow(big_from_u64(m.prime()), v);
  if (!mpz_divisible_p(value.get_mpz_t(), pv.get_mpz_t())) {
    throw error(errc::not_divisible, value.get_str() + " by p^" + std::to_string(v));
  }
  mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), pv.get_mpz_t());
  return Residue(m.with_exponent(m.exponent() - v), value);
}

inline Valuation valuation_of(const Residue& a) {
  if (a.is_zero()) return Valuation::at_least(a.modulus().exponent());
  if (a.modulus().word_sized()) return Valuation::exact(valuation_u64(a.word_value(), a.modulus().prime()));
  return Valuation::exact(static_cast<unsigned>(integer_valuation(a.value(), a.modulus().prime())));
}

}  // namespace supercong
