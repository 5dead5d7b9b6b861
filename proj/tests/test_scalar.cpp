#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "aftail/rational.hpp"
#include "aftail/scalar.hpp"

using aftail::Rational;
using aftail::Scalar;

TEST(Rational, NormalizesSignAndGcd) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
  EXPECT_EQ(Rational(0, -7).to_string(), "0/1");
  EXPECT_EQ(Rational(5).to_string(), "5/1");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, Arithmetic) {
  Rational a(1, 2);
  Rational b(1, 3);
  EXPECT_EQ(a + b, Rational(5, 6));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 6));
  EXPECT_EQ(a / b, Rational(3, 2));
  EXPECT_EQ(-a, Rational(-1, 2));
  EXPECT_THROW(a / Rational(), std::domain_error);
  EXPECT_LT(b, a);
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_EQ(Rational(4, 2).to_int64(), 2);
  EXPECT_THROW((void)Rational(1, 2).to_int64(), std::domain_error);
}

TEST(Rational, PromotesOnOverflowAndAgreesWithGmp) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational x(big);
  Rational y = x * x * x;
  mpq_class ref = mpq_class(big) * mpq_class(big) * mpq_class(big);
  EXPECT_EQ(y.to_mpq(), ref);
  EXPECT_EQ(y / (x * x), x);
  EXPECT_EQ((y / (x * x)).to_int64(), big);
  EXPECT_EQ(Rational(big) + Rational(1) - Rational(1), x);
  Rational tiny(1, big);
  EXPECT_EQ((tiny * tiny).to_mpq(), mpq_class(1) / (mpq_class(big) * mpq_class(big)));
}

TEST(Rational, RandomAgreementWithMpq) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-1000000007, 1000000007);
  std::uniform_int_distribution<std::int64_t> den(1, 1000000007);
  Rational acc(1);
  mpq_class ref(1);
  for (int i = 0; i < 200; ++i) {
    std::int64_t a = num(rng);
    std::int64_t b = den(rng);
    Rational r(a, b);
    mpq_class q(a, b);
    q.canonicalize();
    switch (i % 4) {
      case 0: acc = acc + r; ref += q; break;
      case 1: acc = acc * r; ref *= q; break;
      case 2: acc = acc - r; ref -= q; break;
      default:
        if (a != 0) {
          acc = acc / r;
          ref /= q;
        }
    }
    ASSERT_EQ(acc.to_mpq(), ref) << "step " << i;
  }
}

TEST(Scalar, ComplexArithmeticAndFormat) {
  Scalar z(Rational(3), Rational(4));
  EXPECT_EQ(z.norm_sq(), Rational(25));
  EXPECT_EQ(z * z.conj(), Scalar(25));
  EXPECT_EQ(Scalar::i() * Scalar::i(), Scalar(-1));
  EXPECT_EQ(z / z, Scalar(1));
  EXPECT_EQ(Scalar(Rational(1, 2), Rational(-3, 4)).to_string(), "1/2+-3/4*i");
  EXPECT_EQ(Scalar(2).to_string(), "2/1+0/1*i");
  EXPECT_TRUE(Scalar().is_zero());
  EXPECT_TRUE(Scalar(7).is_real());
}
