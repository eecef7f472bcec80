// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "oracle.hpp"
#include "supercong/bernoulli.hpp"

using namespace supercong;

namespace {

// Akiyama-Tanigawa; produces B_1 = +1/2, flipped below.
std::vector<mpq_class> akiyama_tanigawa(std::size_t n) {
  std::vector<mpq_class> a(n + 1), out;
  for (std::size_t m = 0; m <= n; ++m) {
    a[m] = mpq_class(1, static_cast<unsigned long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) {
      a[j - 1] = mpq_class(static_cast<unsigned long>(j)) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out.push_back(m == 1 ? mpq_class(-a[0]) : a[0]);
  }
  return out;
}

std::string saved_prefix(std::size_t n) {
  BernoulliCache cache(n);
  cache.extend_to(n);
  std::ostringstream os;
  cache.save(os);
  return os.str();
}

errc load_error(const std::string& text) {
  BernoulliCache cache(64);
  std::istringstream in(text);
  try {
    cache.load(in);
  } catch (const error& e) {
    return e.code();
  }
  return errc::usage;
}

}  // namespace

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli_exact(0), 1);
  EXPECT_EQ(bernoulli_exact(1), make_rational(-1, 2));
  EXPECT_EQ(bernoulli_exact(2), make_rational(1, 6));
  EXPECT_EQ(bernoulli_exact(4), make_rational(-1, 30));
  EXPECT_EQ(bernoulli_exact(12), make_rational(-691, 2730));
  EXPECT_EQ(bernoulli_exact(7), 0);
}

TEST(Bernoulli, AgreesWithAkiyamaTanigawa) {
  auto ref = akiyama_tanigawa(120);
  for (std::size_t n = 0; n <= 120; ++n) EXPECT_EQ(bernoulli_exact(n), ref[n]) << n;
}

TEST(Bernoulli, VonStaudtClausen) {
  EXPECT_EQ(vsc_denominator(2), 6);
  EXPECT_EQ(vsc_denominator(4), 30);
  EXPECT_EQ(vsc_denominator(12), 2730);
  for (std::size_t n = 2; n <= 600; n += 2) EXPECT_EQ(bernoulli_exact(n).get_den(), vsc_denominator(n)) << n;
  EXPECT_THROW(vsc_denominator(3), error);
}

TEST(Bernoulli, Reduction) {
  EXPECT_EQ(bernoulli_mod(2, 5, 1).value(), 1);
  EXPECT_EQ(bernoulli_mod(4, 7, 2).value(), 49 - oracle::egcd_inverse(30, 49));
  try {
    (void)bernoulli_mod(4, 5, 1);
    FAIL() << "expected IrregularReduction";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::irregular_reduction);
  }
}

TEST(Bernoulli, BoundEnforced) {
  BernoulliCache cache(10);
  try {
    (void)cache.get(11);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::cache_bound_exceeded);
  }
}

TEST(Bernoulli, LazyExtension) {
  BernoulliCache cache(100);
  EXPECT_EQ(cache.computed(), 0u);
  (void)cache.get(10);
  EXPECT_EQ(cache.computed(), 11u);
  (void)cache.get(4);
  EXPECT_EQ(cache.computed(), 11u);
  (void)cache.get(40);
  EXPECT_EQ(cache.computed(), 41u);
}

TEST(Bernoulli, ConcurrentReadersSeeOneValue) {
  BernoulliCache cache(300);
  std::vector<BigRational> seen(4);
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      threads.emplace_back([&, i] { seen[i] = cache.get(200 + 2 * i); });
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], bernoulli_exact(200 + 2 * i));
}

TEST(BernoulliCacheFile, RoundTrip) {
  const std::string text = saved_prefix(80);
  BernoulliCache cache(200);
  std::istringstream in(text);
  cache.load(in);
  EXPECT_EQ(cache.computed(), 81u);
  for (std::size_t n = 0; n <= 80; ++n) EXPECT_EQ(cache.get(n), bernoulli_exact(n));
  EXPECT_EQ(cache.get(120), bernoulli_exact(120));
}

TEST(BernoulliCacheFile, CorruptValueRejected) {
  std::string text = saved_prefix(30);
  // -693/2730 shares the factor 21.
  auto at = text.find("12 -691 2730");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 12, "12 -693 2730");
  EXPECT_EQ(load_error(text), errc::irregular_cache);
}

TEST(BernoulliCacheFile, WrongDenominatorRejected) {
  std::string text = saved_prefix(30);
  auto at = text.find("12 -691 2730");
  text.replace(at, 12, "12 -691 2731");
  EXPECT_EQ(load_error(text), errc::irregular_cache);
}

TEST(BernoulliCacheFile, RecurrenceViolationRejected) {
  // Correct denominator and sign, wrong numerator: only the recurrence catches it.
  std::string text = saved_prefix(30);
  auto at = text.find("\n30 ");
  ASSERT_NE(at, std::string::npos);
  auto end = text.find('\n', at + 1);
  const std::string line = text.substr(at + 1, end - at - 1);
  std::istringstream ls(line);
  std::size_t idx;
  mpz_class num, den;
  ls >> idx >> num >> den;
  num += den;
  while (gcd(num, den) != 1) num += den;
  text.replace(at + 1, end - at - 1, "30 " + num.get_str() + " " + den.get_str());
  EXPECT_EQ(load_error(text), errc::irregular_cache);
}

TEST(BernoulliCacheFile, StructuralProblemsRejected) {
  EXPECT_EQ(load_error(""), errc::irregular_cache);
  EXPECT_EQ(load_error("0 1 1\n2 1 6\n"), errc::irregular_cache);
  EXPECT_EQ(load_error("0 1 1\n1 1 2\n"), errc::irregular_cache);
  EXPECT_EQ(load_error("0 1 1\n1 -1 2\n2 1 x\n"), errc::irregular_cache);
  EXPECT_EQ(load_error("0 1 1\n1 -1 2\n2 1 6\n3 1 5\n"), errc::irregular_cache);
  EXPECT_EQ(load_error("garbage\n"), errc::irregular_cache);
}
