#include "catalankit/constants.hpp"

#include <gtest/gtest.h>

#include <random>

namespace catalankit {
namespace {

using boost::multiprecision::abs;

TEST(RefConstant, ParseRenderIsLossless) {
  for (const char* text : {"0.915965594177219015054603514932384110774149374281672134266498119621763",
                           "1.202056903159594285399738161511449990764986292340498881792271555341838",
                           "-0.000123450000000000000000000000000000000000000000000000000000001",
                           "31415.92653589793238462643383279502884197169399375105820974944592"}) {
    const auto c = RefConstant::parse("x", text);
    EXPECT_EQ(c.render(), text);
    const auto again = RefConstant::parse("x", c.render());
    EXPECT_EQ(again.digits, c.digits);
    EXPECT_EQ(again.exponent, c.exponent);
    EXPECT_EQ(again.negative, c.negative);
  }
}

TEST(RefConstant, StoredConstantsCarryAtLeastFiftyDigits) {
  EXPECT_GE(catalan_constant().significant_digits(), 50);
  EXPECT_GE(zeta3_constant().significant_digits(), 50);
  EXPECT_GE(pi_constant().significant_digits(), 50);
}

TEST(RefConstant, DoubleProjectionRoundsToNearest) {
  EXPECT_EQ(catalan_constant().to_double(), 0.915965594177219015054603514932384110774);
  EXPECT_EQ(zeta3_constant().to_double(), 1.2020569031595942853997381615114);
  EXPECT_EQ(pi_constant().to_double(), 3.14159265358979323846264338327950288);
}

TEST(RefConstant, RejectsGarbage) {
  EXPECT_THROW(RefConstant::parse("x", "1.2.3"), std::invalid_argument);
  EXPECT_THROW(RefConstant::parse("x", "abc"), std::invalid_argument);
  EXPECT_THROW(RefConstant::parse("x", "0.000"), std::invalid_argument);
}

TEST(CatalanPartialSum, SmallCases) {
  EXPECT_EQ(catalan_partial_sum(0), HighPrecision(1));
  EXPECT_LT(abs(catalan_partial_sum(1) - HighPrecision(8) / 9), HighPrecision("1e-75"));
}

TEST(CatalanPartialSum, EulerMaclaurinTailMatchesDirectSummation) {
  for (std::uint64_t n : {4000u, 4001u, 4002u, 9999u, 20000u}) {
    EXPECT_LT(abs(catalan_partial_sum(n) - catalan_partial_sum_direct(n)), HighPrecision("1e-70"))
        << n;
  }
}

TEST(CatalanPartialSum, MillionTermsWithinRemainderBound) {
  const HighPrecision s = catalan_partial_sum(1'000'000);
  EXPECT_LE(abs(s - HighPrecision("0.915965594177219015054603514932384110774")),
            HighPrecision(2.5e-13));
}

TEST(CatalanPartialSum, AlternatingBracketAndRemainderBound) {
  const HighPrecision g = catalan_reference();
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> ns = {0, 1, 2, 3, 10, 11, 999, 1000, 4001, 100'000'000};
  for (int i = 0; i < 20; ++i) ns.push_back(rng() % 5'000'000);
  for (std::uint64_t n : ns) {
    const HighPrecision s = catalan_partial_sum(n);
    if (n % 2 == 0)
      EXPECT_GE(s, g) << n;
    else
      EXPECT_LE(s, g) << n;
    EXPECT_LE(abs(s - g), HighPrecision(catalan_partial_sum_bound(n))) << n;
  }
}

TEST(CatalanReference, AcceleratedSeriesMatchesStoredDigits) {
  const auto acc = catalan_accelerated(90);
  EXPECT_LT(acc.error_bound, HighPrecision("1e-60"));
  EXPECT_LT(abs(acc.value - catalan_constant().value()), HighPrecision("1e-28"));
  EXPECT_LT(abs(acc.value - catalan_constant().value()), acc.error_bound + HighPrecision("1e-68"));
}

TEST(CatalanReference, ErrorBoundIsHonestAtLowOrder) {
  const HighPrecision g = catalan_constant().value();
  for (int terms : {5, 10, 20, 40}) {
    const auto acc = catalan_accelerated(terms);
    EXPECT_LE(abs(acc.value - g), acc.error_bound) << terms;
  }
}

TEST(CatalanReference, LeadingDigits) {
  const double g = static_cast<double>(catalan_reference());
  EXPECT_NEAR(g, 0.915965594177219015, 1e-17);
  EXPECT_EQ(to_decimal_string(catalan_reference(), 6), "0.915966");
  EXPECT_EQ(to_decimal_string(catalan_reference(), 30).substr(0, 8), "0.915965");
}

TEST(Zeta3, DirectSummationOracle) {
  // sum_{n<=N} 1/n^3 plus the integral tail bounds 1/(2(N+1)^2) <= tail <= 1/(2N^2).
  constexpr int N = 200000;
  HighPrecision partial = 0;
  for (int n = N; n >= 1; --n) {
    HighPrecision d = n;
    partial += 1 / (d * d * d);
  }
  const HighPrecision lower = partial + HighPrecision(1) / (2 * HighPrecision(N + 1) * (N + 1));
  const HighPrecision upper = partial + HighPrecision(1) / (2 * HighPrecision(N) * N);
  const HighPrecision z = zeta3_reference();
  EXPECT_GE(z, lower);
  EXPECT_LE(z, upper);
  EXPECT_NEAR(static_cast<double>(z), 1.202056903159594, 1e-15);
}

TEST(Zeta3, SeriesMatchesStoredDigitsAndBound) {
  const auto s = zeta3_series(120);
  EXPECT_LT(s.error_bound, HighPrecision("1e-60"));
  EXPECT_LT(abs(s.value - zeta3_constant().value()), HighPrecision("1e-28"));
  EXPECT_GT(s.value, HighPrecision("1.125"));
  EXPECT_NEAR(static_cast<double>(7 * s.value / 8), 1.051799790264644999, 1e-15);
}

TEST(Zeta3, RemainderBoundHoldsAtLowOrder) {
  const HighPrecision z = zeta3_constant().value();
  for (int terms : {3, 8, 20}) {
    const auto s = zeta3_series(terms);
    EXPECT_LE(abs(s.value - z), s.error_bound) << terms;
  }
}

TEST(QuadrantIdentity, ValueFromOracles) {
  EXPECT_NEAR(static_cast<double>(quadrant_identity_value()), 0.386995600539435576, 1e-17);
}

}  // namespace
}  // namespace catalankit
