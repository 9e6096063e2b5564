#include "catalankit/rational_poly.hpp"

#include <gtest/gtest.h>

#include <random>

namespace catalankit {
namespace {

RationalPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree), num(-50, 50), den(1, 12);
  std::vector<Rational> c(deg(rng) + 1);
  for (auto& x : c) x = Rational(num(rng), den(rng));
  return RationalPoly(std::move(c));
}

TEST(RationalPoly, TrailingZerosAreTrimmed) {
  RationalPoly p{Rational(1), Rational(2), Rational(0), Rational(0)};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE(RationalPoly{Rational(0)}.is_zero());
  EXPECT_EQ(RationalPoly{}.degree(), -1);
  EXPECT_TRUE((p - p).is_zero());
}

TEST(RationalPoly, CoefficientsStayInLowestTerms) {
  RationalPoly p{Rational(2, 4), Rational(-6, 8)};
  EXPECT_EQ(boost::multiprecision::numerator(p.coeff(0)), 1);
  EXPECT_EQ(boost::multiprecision::denominator(p.coeff(0)), 2);
  EXPECT_EQ(boost::multiprecision::numerator(p.coeff(1)), -3);
  EXPECT_EQ(boost::multiprecision::denominator(p.coeff(1)), 4);
}

TEST(RationalPoly, DerivativeReflectionAndProduct) {
  RationalPoly p{Rational(1), Rational(-3), Rational(0), Rational(2)};  // 1 - 3z + 2z^3
  EXPECT_EQ(p.derivative(), (RationalPoly{Rational(-3), Rational(0), Rational(6)}));
  EXPECT_EQ(p.reflected(), (RationalPoly{Rational(1), Rational(3), Rational(0), Rational(-2)}));
  RationalPoly one_plus_z{Rational(1), Rational(1)};
  EXPECT_EQ(one_plus_z * one_plus_z, (RationalPoly{Rational(1), Rational(2), Rational(1)}));
  EXPECT_DOUBLE_EQ(p.evaluate(2.0), 1 - 6 + 16);
}

TEST(RationalPoly, RingIdentitiesHoldOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_poly(rng, 6), b = random_poly(rng, 6), c = random_poly(rng, 6);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    // Leibniz rule.
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
    EXPECT_EQ(a.reflected().reflected(), a);
    const auto product = a * b;
    for (const auto& x : product.coeffs()) {
      EXPECT_GT(boost::multiprecision::denominator(x), 0);
      EXPECT_EQ(boost::multiprecision::gcd(boost::multiprecision::numerator(x),
                                           boost::multiprecision::denominator(x)),
                1);
    }
    if (!product.is_zero()) EXPECT_NE(product.coeffs().back(), 0);
  }
}

}  // namespace
}  // namespace catalankit
