// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "oracle.hpp"
#include "supercong/fracbinom.hpp"

using namespace supercong;

TEST(BinomStream, FirstEntries) {
  PrimePowerModulus m(5, 6);
  Residue x = from_rational(make_rational(-1, 6), m);
  auto s = binom_stream(x, 1, 6);
  EXPECT_EQ(s.values[0].value, Residue::one(m));
  // -1/6 mod 5^6: 6 * 13021 = 78126 == 1, so the answer is 15625 - 13021.
  EXPECT_EQ(oracle::egcd_inverse(6, 15625), 13021);
  EXPECT_EQ(s.values[1].value.value(), 2604);
}

TEST(BinomStream, NeedsPadding) {
  PrimePowerModulus m(5, 3);
  Residue x = from_rational(make_rational(1, 3), m);
  EXPECT_THROW(binom_stream(x, 5, 3), error);
  EXPECT_NO_THROW(binom_stream(x, 4, 3));
}

TEST(BinomStream, MatchesProductFormula) {
  for (std::uint64_t p : {3ull, 5ull, 7ull}) {
    const BigRational x = make_rational(2, 7 + static_cast<std::int64_t>(p == 7));
    const std::uint64_t kmax = 3 * p;
    const unsigned target = 4;
    const unsigned pad = static_cast<unsigned>(factorial_valuation(kmax, p));
    auto s = binom_stream(from_rational(x, PrimePowerModulus(p, target + pad)), kmax, target);
    for (std::uint64_t k = 0; k <= kmax; ++k) {
      const auto& e = s.values[k];
      EXPECT_EQ(e.value.value(), oracle::reduce(oracle::binom(x, k), p, e.precision)) << "p=" << p << " k=" << k;
      EXPECT_GE(e.precision, target);
    }
  }
}

TEST(RationalBinom, UnitSplitMatchesOracle) {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    for (auto [num, den] : {std::pair{-1, 3}, std::pair{1, 4}, std::pair{7, 3}, std::pair{-2, 7}}) {
      if (den % static_cast<int>(p) == 0) continue;
      const BigRational x = make_rational(num, den);
      PrimePowerModulus m(p, 8);
      RationalBinomGenerator gen(num, den, m);
      for (std::uint64_t k = 0; k <= 4 * p * p; ++k) {
        const BigRational b = oracle::binom(x, k);
        if (b == 0) {
          EXPECT_TRUE(gen.is_zero());
        } else {
          EXPECT_EQ(static_cast<long>(gen.valuation()), oracle::valuation(b, p));
          EXPECT_EQ(gen.value().value(), oracle::reduce(b, p, 8)) << x << " choose " << k << " at p=" << p;
          EXPECT_EQ(gen.power(3).value(), oracle::reduce(b * b * b, p, 8));
        }
        gen.advance();
      }
    }
  }
}

TEST(RationalBinom, NonnegativeIntegerTopTerminates) {
  RationalBinomGenerator gen(3, 1, PrimePowerModulus(5, 4));
  for (int k = 0; k < 4; ++k) gen.advance();
  EXPECT_TRUE(gen.is_zero());
  EXPECT_TRUE(gen.value().is_zero());
}

TEST(FamilyTerm, Values) {
  EXPECT_EQ(family_term(7, 3, 0, 4).value, Residue::one(PrimePowerModulus(7, 4)));
  // p = 5, m = 6: x = -1/6, term = (-1)^6 (-1/6)^6 = 1/46656.
  EXPECT_EQ(family_term(5, 6, 1, 6).value.value(), oracle::reduce(make_rational(1, 46656), 5, 6));
  EXPECT_THROW(family_term(5, 10, 1, 3), error);
}

TEST(FamilyTerm, RandomAgainstExact) {
  auto rng = oracle::rng(7);
  for (int i = 0; i < 40; ++i) {
    const std::uint64_t p = std::vector<std::uint64_t>{5, 7, 11, 13}[rng() % 4];
    std::uint64_t m = rng() % 12 + 1;
    if (m % p == 0) ++m;
    const std::uint64_t k = rng() % p;
    const BigRational x = make_rational(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(m),
                                        static_cast<std::int64_t>(m));
    BigRational expect = 1;
    const BigRational b = oracle::binom(x, k);
    for (std::uint64_t j = 0; j < m; ++j) expect *= b;
    if (k % 2 == 1 && m % 2 == 1) expect = -expect;
    EXPECT_EQ(family_term(p, m, k, 4).value.value(), oracle::reduce(expect, p, 4)) << p << " " << m << " " << k;
  }
}

TEST(ConjectureTerm, Values) {
  EXPECT_EQ(conjecture_term(7, 3, 2, 0, 3, SignMode::alternating_km, 3), Residue::one(PrimePowerModulus(7, 3)));
  const BigRational b = oracle::binom(make_rational(2, 3), 2);
  EXPECT_EQ(conjecture_term(11, 3, 2, 2, 3, SignMode::none, 3).value(), oracle::reduce(b * b * b, 11, 3));
  EXPECT_EQ(conjecture_term(11, 3, 2, 3, 3, SignMode::alternating, 3).value(),
            oracle::reduce(-oracle::binom(make_rational(2, 3), 3) * oracle::binom(make_rational(2, 3), 3) *
                               oracle::binom(make_rational(2, 3), 3),
                           11, 3));
  EXPECT_THROW(conjecture_term(3, 6, 1, 1, 1, SignMode::none, 2), error);
}
