// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "supercong/modring.hpp"
#include "supercong/primes.hpp"
#include "supercong/rational.hpp"

using namespace supercong;

namespace {

Residue res(std::uint64_t p, unsigned c, std::int64_t v) { return Residue(PrimePowerModulus(p, c), v); }

errc code_of(const auto& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return errc::usage;
}

}  // namespace

TEST(Primes, MillerRabinAgreesWithTrialDivision) {
  auto slow = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (std::uint64_t n = 0; n < 5000; ++n) EXPECT_EQ(is_prime(n), slow(n)) << n;
}

TEST(Primes, LargeWitnesses) {
  EXPECT_TRUE(is_prime(18446744073709551557ull));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(3215031751ull));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ull));  // strong pseudoprime to the first nine prime bases
  EXPECT_TRUE(is_prime(1000000007ull));
}

TEST(Primes, SieveRange) {
  EXPECT_EQ(primes_between(5, 13), (std::vector<std::uint64_t>{5, 7, 11, 13}));
  EXPECT_EQ(primes_between(2, 499).size(), 95u);
  EXPECT_TRUE(primes_between(24, 28).empty());
}

TEST(Primes, FactorialValuationLegendre) {
  EXPECT_EQ(factorial_valuation(25, 5), 6u);
  EXPECT_EQ(factorial_valuation(4, 5), 0u);
  EXPECT_EQ(factorize(360), (std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}}));
}

TEST(Rational, Valuations) {
  EXPECT_EQ(rational_valuation(make_rational(25, 12), 5), 2);
  EXPECT_EQ(rational_valuation(make_rational(25, 12), 2), -2);
  EXPECT_EQ(rational_valuation(make_rational(77, 12), 7), 1);
  EXPECT_EQ(rational_valuation(BigRational(0), 7), kInfiniteValuation);
}

TEST(Rational, BinomMatchesOracle) {
  const BigRational x = make_rational(-1, 6);
  for (std::uint64_t k = 0; k < 12; ++k) EXPECT_EQ(binom_exact(x, k), oracle::binom(x, k)) << k;
}

TEST(ModRing, RingOps) {
  EXPECT_EQ(res(2, 5, 3) + res(2, 5, 30), res(2, 5, 1));
  EXPECT_EQ(res(2, 5, 11) * res(2, 5, 3), res(2, 5, 1));
  auto rng = oracle::rng();
  PrimePowerModulus m(7, 3);
  for (int i = 0; i < 50; ++i) {
    Residue x(m, static_cast<std::int64_t>(rng() % 343));
    EXPECT_EQ(x * Residue::one(m), x);
  }
}

TEST(ModRing, MismatchedModuliRejected) {
  EXPECT_EQ(code_of([] { (void)(res(5, 2, 1) + res(5, 3, 1)); }), errc::modulus_mismatch);
}

TEST(ModRing, NonPrimeModulusRejected) {
  EXPECT_EQ(code_of([] { PrimePowerModulus(6, 2); }), errc::not_prime);
}

TEST(ModRing, Inverse) {
  EXPECT_EQ(inverse(res(2, 5, 3)).value(), 11);
  EXPECT_EQ(inverse(res(5, 3, 7)).value(), 18);
  EXPECT_EQ(code_of([] { (void)inverse(res(5, 2, 5)); }), errc::not_invertible);
}

TEST(ModRing, InverseAgreesWithEgcdOracle) {
  auto rng = oracle::rng(1);
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 101ull, 65521ull}) {
    for (unsigned c : {1u, 2u, 3u}) {
      const auto mod = static_cast<std::int64_t>(oracle::prime_power(p, c).get_si());
      for (int i = 0; i < 40; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(mod));
        if (a % static_cast<std::int64_t>(p) == 0) continue;
        EXPECT_EQ(inverse(res(p, c, a)).value(), oracle::egcd_inverse(a, mod)) << a << " mod " << mod;
      }
    }
  }
}

TEST(ModRing, FromRational) {
  // 6 * 521 = 3126 == 1 mod 5^5
  EXPECT_EQ(oracle::egcd_inverse(6, 3125), 521);
  EXPECT_EQ(from_rational(make_rational(-1, 6), PrimePowerModulus(5, 5)).value(), 3125 - 521);
  EXPECT_EQ(from_rational(make_rational(-1, 6), PrimePowerModulus(5, 5)).value(), 2604);
  EXPECT_TRUE(from_rational(BigRational(0), PrimePowerModulus(11, 4)).is_zero());
  EXPECT_EQ(code_of([] { (void)from_rational(make_rational(1, 5), PrimePowerModulus(5, 2)); }),
            errc::denominator_not_coprime);
}

TEST(ModRing, FromRationalMatchesEulerReduction) {
  auto rng = oracle::rng(2);
  for (std::uint64_t p : {3ull, 7ull, 13ull, 499ull}) {
    for (unsigned c : {1u, 4u, 9u, 30u}) {
      PrimePowerModulus m(p, c);
      for (int i = 0; i < 25; ++i) {
        std::int64_t num = static_cast<std::int64_t>(rng() % 1'000'000) - 500'000;
        std::int64_t den = static_cast<std::int64_t>(rng() % 999'999) + 1;
        if (den % static_cast<std::int64_t>(p) == 0) ++den;
        if (den % static_cast<std::int64_t>(p) == 0) ++den;
        const BigRational q = make_rational(num, den);
        EXPECT_EQ(from_rational(q, m).value(), oracle::reduce(q, p, c)) << num << "/" << den << " mod " << p << "^" << c;
      }
    }
  }
}

TEST(ModRing, WordAndBigPathsAgree) {
  // 3^39 fits in 63 bits, 3^40 does not.
  PrimePowerModulus small(3, 39), big(3, 40);
  EXPECT_TRUE(small.word_sized());
  EXPECT_FALSE(big.word_sized());
  auto rng = oracle::rng(3);
  for (int i = 0; i < 100; ++i) {
    const BigRational a = make_rational(static_cast<std::int64_t>(rng() % 100000) + 1, 3 * (rng() % 1000) + 1);
    const BigRational b = make_rational(static_cast<std::int64_t>(rng() % 100000) - 50000, 3 * (rng() % 1000) + 2);
    Residue ab = from_rational(a, big) * from_rational(b, big) - from_rational(b, big);
    Residue as = from_rational(a, small) * from_rational(b, small) - from_rational(b, small);
    EXPECT_EQ(truncate(ab, 39), as);
    EXPECT_EQ(as.value(), oracle::reduce(a * b - b, 3, 39));
  }
}

TEST(ModRing, Pow) {
  PrimePowerModulus m(7, 4);
  EXPECT_EQ(pow(Residue(m, std::int64_t{1234}), 0), Residue::one(m));
  EXPECT_EQ(pow(res(3, 7, 2), 10).value(), 1024);
  PrimePowerModulus m6(5, 6);
  Residue x = from_rational(make_rational(-1, 6), m6);
  EXPECT_EQ(pow(x, 6).value(), oracle::reduce(make_rational(1, 46656), 5, 6));
}

TEST(ModRing, ExactDivision) {
  Residue d = exact_div_by_p(res(5, 4, 50), 2);
  EXPECT_EQ(d.modulus().exponent(), 2u);
  EXPECT_EQ(d.value(), 2);
  EXPECT_EQ(code_of([] { (void)exact_div_by_p(res(5, 4, 3), 1); }), errc::not_divisible);
  EXPECT_EQ(code_of([] { (void)exact_div_by_p(res(5, 4, 0), 4); }), errc::precision_exhausted);

  // H_6 mod 7^4, divided by 7, equals (H_6 / 7) mod 7^3.
  const BigRational h6 = oracle::harmonic(6, 1);
  PrimePowerModulus m(7, 4);
  Residue q = exact_div_by_p(from_rational(h6, m), 1);
  EXPECT_EQ(q.value(), oracle::reduce(h6 / 7, 7, 3));
}

TEST(ModRing, ValuationOf) {
  EXPECT_EQ(valuation_of(res(5, 6, 250)), Valuation::exact(3));
  EXPECT_EQ(valuation_of(res(5, 6, 0)), Valuation::at_least(6));
  EXPECT_EQ(valuation_of(res(5, 6, 7)), Valuation::exact(0));
  EXPECT_EQ(Valuation::at_least(6).to_string(), ">=6");
  EXPECT_TRUE(Valuation::at_least(6).satisfies(6));
  EXPECT_FALSE(Valuation::exact(2).satisfies(3));
}

TEST(ModRing, ValuationMatchesOracleOnRandomIntegers) {
  auto rng = oracle::rng(4);
  PrimePowerModulus m(3, 12);
  for (int i = 0; i < 200; ++i) {
    const auto v = static_cast<std::int64_t>(rng() % 531441);
    Valuation got = valuation_of(Residue(m, v));
    if (v == 0) {
      EXPECT_FALSE(got.is_exact());
    } else {
      EXPECT_EQ(static_cast<long>(got.amount), oracle::valuation(mpz_class(static_cast<long>(v)), 3));
    }
  }
}

TEST(ModRing, TruncateAndLift) {
  Residue a = res(5, 6, 12345);
  EXPECT_EQ(truncate(a, 2).value(), 12345 % 25);
  Residue b = mul_by_p_power(res(5, 6, 3), 2);
  EXPECT_EQ(b.value(), 75);
  EXPECT_EQ(b.modulus().exponent(), 6u);
}
