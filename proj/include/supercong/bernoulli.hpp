// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "supercong/modring.hpp"
#include "supercong/primes.hpp"
#include "supercong/rational.hpp"

namespace supercong {

/// Product of the primes q with (q - 1) | n, for even n >= 2. By von
/// Staudt-Clausen this is the denominator of B_n.
inline BigInt vsc_denominator(std::uint64_t n) {
  if (n < 2 || n % 2 != 0) throw error(errc::usage, "vsc_denominator needs an even n >= 2");
  BigInt d = 1;
  for (std::uint64_t q1 = 1; q1 * q1 <= n; ++q1) {
    if (n % q1 != 0) continue;
    if (is_prime(q1 + 1)) d *= big_from_u64(q1 + 1);
    const std::uint64_t other = n / q1;
    if (other != q1 && is_prime(other + 1)) d *= big_from_u64(other + 1);
  }
  return d;
}

/// B_0..B_N as exact rationals, B_1 = -1/2.
///
/// Values are filled in lazily by a single writer under a mutex; the storage
/// is allocated up front so a reader that has seen `computed() > n` can read
/// entry n without locking.
class BernoulliCache {
 public:
  static constexpr std::size_t kDefaultBound = 1200;

  explicit BernoulliCache(std::size_t bound = kDefaultBound) : values_(bound + 1) {}

  BernoulliCache(const BernoulliCache&) = delete;
  BernoulliCache& operator=(const BernoulliCache&) = delete;

  std::size_t bound() const noexcept { return values_.size() - 1; }
  std::size_t computed() const noexcept { return ready_.load(std::memory_order_acquire); }

  const BigRational& get(std::size_t n) {
    if (n > bound()) {
      throw error(errc::cache_bound_exceeded,
                  "B_" + std::to_string(n) + " beyond cache bound " + std::to_string(bound()));
    }
    if (n >= computed()) extend_to(n);
    return values_[n];
  }

  void extend_to(std::size_t n) {
    std::lock_guard lock(write_);
    for (std::size_t r = ready_.load(std::memory_order_relaxed); r <= n; ++r) {
      values_[r] = next_value(r);
      ready_.store(r + 1, std::memory_order_release);
    }
  }

  /// Flat text: one "index numerator denominator" record per line.
  void save(std::ostream& out) const {
    const std::size_t n = computed();
    for (std::size_t i = 0; i < n; ++i) {
      out << i << ' ' << values_[i].get_num().get_str() << ' ' << values_[i].get_den().get_str() << '\n';
    }
  }

  /// Parses and validates a saved prefix, then installs it. Throws
  /// IrregularCache if the file is malformed or fails any integrity check.
  void load(std::istream& in) {
    auto prefix = parse(in);
    validate(prefix);
    std::lock_guard lock(write_);
    const std::size_t have = ready_.load(std::memory_order_relaxed);
    const std::size_t take = std::min(prefix.size(), values_.size());
    for (std::size_t i = have; i < take; ++i) values_[i] = prefix[i];
    if (take > have) ready_.store(take, std::memory_order_release);
  }

  static std::vector<BigRational> parse(std::istream& in) {
    std::vector<BigRational> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::size_t index;
      std::string num, den;
      if (!(ls >> index >> num >> den)) irregular("unparsable record on line " + std::to_string(lineno));
      if (index != out.size()) irregular("records not contiguous at line " + std::to_string(lineno));
      BigInt n, d;
      if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
        irregular("bad integer on line " + std::to_string(lineno));
      }
      if (d <= 0) irregular("nonpositive denominator for B_" + std::to_string(index));
      BigInt g;
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
      if (g != 1) irregular("B_" + std::to_string(index) + " not reduced");
      BigRational q;
      q.get_num() = n;
      q.get_den() = d;
      out.push_back(std::move(q));
    }
    return out;
  }

  /// Structural checks on every entry plus the defining recurrence on a
  /// fixed-seed random sample of indices (always including the last one).
  static void validate(const std::vector<BigRational>& b, std::size_t samples = 32) {
    if (b.empty()) irregular("empty cache");
    if (b[0] != 1) irregular("B_0 != 1");
    if (b.size() > 1 && b[1] != BigRational(-1, 2)) irregular("B_1 != -1/2");
    for (std::size_t n = 2; n < b.size(); ++n) {
      const std::string name = "B_" + std::to_string(n);
      if (n % 2 == 1) {
        if (b[n] != 0) irregular(name + " should vanish");
        continue;
      }
      if (b[n].get_den() != vsc_denominator(n)) irregular(name + " denominator fails von Staudt-Clausen");
      const int expected_sign = (n / 2) % 2 == 1 ? 1 : -1;
      if (sgn(b[n]) != expected_sign) irregular(name + " has the wrong sign");
    }
    if (b.size() < 2) return;
    std::vector<std::size_t> picks{b.size() - 1};
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> dist(1, b.size() - 1);
    for (std::size_t i = 0; i < samples; ++i) picks.push_back(dist(rng));
    for (std::size_t n : picks) {
      BigRational acc = 0;
      BigInt c = 1;  // C(n+1, k)
      for (std::size_t k = 0; k <= n; ++k) {
        if (b[k] != 0) acc += BigRational(c) * b[k];
        c = c * big_from_u64(n + 1 - k) / big_from_u64(k + 1);
      }
      if (acc != 0) irregular("recurrence fails at n = " + std::to_string(n));
    }
  }

 private:
  [[noreturn]] static void irregular(const std::string& what) { throw error(errc::irregular_cache, what); }

  // Caller holds write_ and values_[0..r-1] are final.
  BigRational next_value(std::size_t r) const {
    if (r == 0) return 1;
    if (r == 1) return BigRational(-1, 2);
    if (r % 2 == 1) return 0;
    // Every denominator of B_k, k < r, divides the product of primes <= r.
    BigInt common = 1;
    for (std::uint64_t q : primes_between(2, r)) common *= big_from_u64(q);
    BigInt sum = 0;
    BigInt c = 1;  // C(r+1, k)
    for (std::size_t k = 0; k < r; ++k) {
      const BigRational& bk = values_[k];
      if (bk != 0) sum += c * bk.get_num() * (common / bk.get_den());
      c = c * big_from_u64(r + 1 - k) / big_from_u64(k + 1);
    }
    return make_rational(-sum, common * big_from_u64(r + 1));
  }

  std::vector<BigRational> values_;
  std::atomic<std::size_t> ready_{0};
  std::mutex write_;
};

inline BernoulliCache& default_bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

inline BigRational bernoulli_exact(std::size_t n) { return default_bernoulli_cache().get(n); }

/// B_n mod p^j. Fails when p divides the denominator of B_n, which for n >= 2
/// happens exactly when (p - 1) | n.
inline Residue bernoulli_mod(std::size_t n, const PrimePowerModulus& m) {
  const BigRational& b = default_bernoulli_cache().get(n);
  if (mpz_divisible_ui_p(b.get_den_mpz_t(), m.prime())) {
    throw error(errc::irregular_reduction,
                "p = " + std::to_string(m.prime()) + " divides the denominator of B_" + std::to_string(n));
  }
  return from_rational(b, m);
}

inline Residue bernoulli_mod(std::size_t n, std::uint64_t p, unsigned j) {
  return bernoulli_mod(n, PrimePowerModulus(p, j));
}

}  // namespace supercong
