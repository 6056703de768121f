#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "qhb/cfrac.hpp"
#include "qhb/errors.hpp"

namespace qhb {
namespace {

WeightString ws(std::vector<std::int64_t> v) { return WeightString(std::move(v)); }

TEST(Fraction, ReducesAndValidates) {
  const Fraction f(72, 38);
  EXPECT_EQ(f.p(), 36);
  EXPECT_EQ(f.q(), 19);
  EXPECT_EQ(f.to_string(), "36/19");
  EXPECT_TRUE(Fraction::s3().is_s3());
  EXPECT_THROW(Fraction(0, 0), DomainError);
  EXPECT_THROW(Fraction(3, 3), DomainError);
  EXPECT_THROW(Fraction(3, 5), DomainError);
  EXPECT_THROW(Fraction(5, -1), DomainError);
}

TEST(WeightString, Flavor) {
  EXPECT_TRUE(ws({2, 10, 2}).is_canonical());
  EXPECT_FALSE(ws({2, 1}).is_canonical());
  EXPECT_THROW(WeightString::canonical({3, 1}), DomainError);
  EXPECT_EQ(ws({2, 10, 2}).to_string(), "[2,10,2]");
  EXPECT_EQ(ws({2, 10, 2}).weight(), 14);
}

TEST(Expand, Examples) {
  EXPECT_EQ(expand(Fraction(36, 19)), ws({2, 10, 2}));
  EXPECT_EQ(expand(Fraction(4, 1)), ws({4}));
  EXPECT_EQ(expand(Fraction(55, 19)), ws({3, 10, 2}));
  // 55/19 = 3 - 1/(10 - 1/2) recomputed independently.
  EXPECT_EQ(*oracle::hj_value({3, 10, 2}), oracle::Rational(55, 19));
}

TEST(Expand, RejectsS3AndImproper) {
  EXPECT_THROW(expand(Fraction::s3()), DomainError);
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(ws({2, 10, 2})), Fraction(36, 19));
  EXPECT_EQ(eval(ws({2, 2})), Fraction(3, 2));
  EXPECT_EQ(eval(ws({3, 2, 2, 2, 2, 2, 2, 2, 3})), Fraction(36, 17));
  EXPECT_EQ(eval(WeightString{}), Fraction::s3());
}

TEST(Eval, LooseStringsBlowDown) {
  EXPECT_EQ(blow_down(ws({5, 1})), ws({4}));
  EXPECT_EQ(blow_down(ws({2, 10, 3, 1})), ws({2, 10, 2}));
  EXPECT_EQ(blow_down(ws({2, 1})), WeightString{});
  EXPECT_EQ(blow_down(ws({3, 1, 3})), ws({2, 2}));
  EXPECT_EQ(eval(ws({5, 1})), Fraction(4, 1));
  EXPECT_EQ(eval(ws({2, 1})), Fraction::s3());
  EXPECT_THROW(blow_down(ws({2, 0, 2})), DomainError);
  EXPECT_THROW(blow_down(ws({1, 1})), DomainError);
}

TEST(Eval, RoundTripAgainstRationalOracle) {
  for (std::int64_t p = 2; p <= 300; ++p) {
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const WeightString s = expand(Fraction(p, q));
      ASSERT_EQ(std::vector<std::int64_t>(s.begin(), s.end()), oracle::hj_expand(p, q)) << p << "/" << q;
      ASSERT_EQ(eval(s), Fraction(p, q));
    }
  }
}

TEST(Continuant, MatchesRationalValue) {
  for (const auto& s : oracle::canonical_strings(14)) {
    const auto [num, den] = continuant(ws(s));
    const oracle::Rational v = *oracle::hj_value(s);
    ASSERT_EQ(oracle::Rational(num, den), v);
  }
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(ws({2})), ws({2}));
  EXPECT_EQ(dual(ws({2, 2})), ws({3}));
  EXPECT_EQ(dual(ws({2, 10, 2})), ws({3, 2, 2, 2, 2, 2, 2, 2, 3}));
  EXPECT_THROW(dual(WeightString{}), DomainError);
  EXPECT_THROW(dual(ws({3, 1})), DomainError);
}

TEST(Dual, InvolutionAndReciprocalSum) {
  for (const auto& s : oracle::canonical_strings(20)) {
    const WeightString a = ws(s);
    const WeightString b = dual(a);
    ASSERT_EQ(dual(b), a) << a.to_string();
    const auto va = *oracle::hj_value(s);
    const auto vb = *oracle::hj_value(std::vector<std::int64_t>(b.begin(), b.end()));
    ASSERT_EQ(oracle::Rational(1) / va + oracle::Rational(1) / vb, oracle::Rational(1)) << a.to_string();
    // len(dual) = sum(a_i - 1) - len + 1
    ASSERT_EQ(static_cast<std::int64_t>(b.size()),
              a.weight() - static_cast<std::int64_t>(a.size()) - static_cast<std::int64_t>(a.size()) + 1);
  }
}

TEST(Dual, PointRuleAgreesWithFraction) {
  for (std::int64_t p = 2; p <= 200; ++p) {
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const WeightString s = expand(Fraction(p, q));
      ASSERT_EQ(dual_point_rule(s), dual_by_fraction(s)) << s.to_string();
    }
  }
}

TEST(Complementary, Examples) {
  EXPECT_TRUE(is_complementary(Fraction(2, 1), Fraction(2, 1)));
  EXPECT_TRUE(is_complementary(Fraction(3, 1), Fraction(3, 2)));
  EXPECT_FALSE(is_complementary(Fraction(55, 19), Fraction(2, 1)));
}

TEST(Complementary, EquivalentToDualStrings) {
  for (std::int64_t a2 = 2; a2 <= 12; ++a2)
    for (std::int64_t b2 = 1; b2 < a2; ++b2)
      for (std::int64_t a3 = 2; a3 <= 12; ++a3)
        for (std::int64_t b3 = 1; b3 < a3; ++b3) {
          if (std::gcd(a2, b2) != 1 || std::gcd(a3, b3) != 1) continue;
          const bool by_strings = expand(Fraction(a2, b2)) == dual(expand(Fraction(a3, b3)));
          ASSERT_EQ(is_complementary(Fraction(a2, b2), Fraction(a3, b3)), by_strings);
          ASSERT_EQ(by_strings, oracle::Rational(b2, a2) + oracle::Rational(b3, a3) == 1);
        }
}

TEST(Reverse, Examples) {
  EXPECT_EQ(reverse(ws({3, 10, 2})), ws({2, 10, 3}));
  EXPECT_EQ(reverse(ws({2, 10, 2})), ws({2, 10, 2}));
  EXPECT_EQ(eval(reverse(ws({3, 10, 2}))), Fraction(55, 29));
  EXPECT_EQ(oracle::inverse_mod(19, 55), 29);
}

TEST(Reverse, DenominatorIsInverse) {
  for (const auto& s : oracle::canonical_strings(16)) {
    const Fraction f = eval(ws(s));
    const Fraction g = eval(reverse(ws(s)));
    ASSERT_EQ(f.p(), g.p());
    ASSERT_EQ((f.q() * g.q()) % f.p(), f.p() == 1 ? 0 : 1);
  }
}

TEST(Arithmetic, Helpers) {
  EXPECT_EQ(mod_inverse(19, 55), 29);
  EXPECT_THROW(mod_inverse(6, 9), DomainError);
  EXPECT_EQ(isqrt(Integer(99)), 9);
  EXPECT_EQ(isqrt(Integer(100)), 10);
  EXPECT_TRUE(is_perfect_square(Integer(144)));
  EXPECT_FALSE(is_perfect_square(Integer(143)));
  EXPECT_THROW(isqrt(Integer(-1)), DomainError);
}

TEST(Expand, LargeValuesStayExact) {
  // A long chain whose continuants overflow 64 bits.
  std::vector<std::int64_t> s(60, 3);
  const Fraction f = eval(ws(s));
  EXPECT_GT(f.p(), Integer(std::numeric_limits<std::int64_t>::max()));
  EXPECT_EQ(expand(f), ws(s));
}

}  // namespace
}  // namespace qhb
