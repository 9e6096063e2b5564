#include "catalankit/constants.hpp"
#include "catalankit/lerch.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace catalankit {
namespace {

std::vector<BigInt> integer_coeffs(const LerchClosedForm& f) {
  std::vector<BigInt> out;
  for (const auto& c : f.numerator.coeffs()) {
    EXPECT_EQ(boost::multiprecision::denominator(c), 1);
    out.push_back(boost::multiprecision::numerator(c));
  }
  return out;
}

std::vector<BigInt> ints(std::initializer_list<long long> v) {
  std::vector<BigInt> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

// Published numerators for Phi(-z, -n, 1/2), n = 1..8, ascending powers.
const std::vector<std::vector<BigInt>>& published_numerators() {
  static const std::vector<std::vector<BigInt>> table = {
      ints({1, -1}),
      ints({1, -6, 1}),
      ints({1, -23, 23, -1}),
      ints({1, -76, 230, -76, 1}),
      ints({1, -237, 1682, -1682, 237, -1}),
      ints({1, -722, 10543, -23548, 10543, -722, 1}),
      ints({1, -2179, 60657, -259723, 259723, -60657, 2179, -1}),
      ints({1, -6552, 331612, -2485288, 4675014, -2485288, 331612, -6552, 1}),
  };
  return table;
}

TEST(LerchSeries, WorkedExamples) {
  EXPECT_EQ(lerch_series(0.0, 2.0, 0.5, 1e-15), 4.0);
  EXPECT_NEAR(lerch_series(-1.0, 2.0, 0.5, 1e-12),
              4.0 * static_cast<double>(catalan_reference()), 1e-12);
  EXPECT_NEAR(lerch_series(-0.5, -1.0, 0.5, 1e-15), 1.0 / 9.0, 1e-15);
}

TEST(LerchSeries, ZetaAtUnitArgument) {
  // Phi(1, 3, 1) = zeta(3).
  EXPECT_NEAR(lerch_series(1.0, 3.0, 1.0, 1e-9), static_cast<double>(zeta3_reference()), 1e-9);
}

TEST(LerchSeries, DomainErrors) {
  EXPECT_THROW(lerch_series(1.5, 2.0, 0.5, 1e-12), std::domain_error);
  EXPECT_THROW(lerch_series(-1.0, 1.0, 0.5, 1e-12), std::domain_error);
  EXPECT_THROW(lerch_series(1.0, 0.5, 0.5, 1e-12), std::domain_error);
  EXPECT_THROW(lerch_series(0.5, 2.0, 0.0, 1e-12), std::domain_error);
  EXPECT_THROW(lerch_series(0.5, 2.0, 0.5, 1e-16), std::domain_error);
}

TEST(LerchSeries, TermCapSurfacesAsNonConvergence) {
  // Alternating tail 1/(k + a)^1.01 needs far more than 1e7 terms for 1e-15.
  EXPECT_THROW(lerch_series(-1.0, 1.01, 0.5, 1e-15), NonConvergenceError);
}

TEST(DeriveClosedForm, BaseCase) {
  const auto f = derive_closed_form(0);
  EXPECT_EQ(integer_coeffs(f), ints({1}));
  EXPECT_EQ(f.pole_order, 1);
  EXPECT_EQ(f.scale, 1);
}

TEST(DeriveClosedForm, ReproducesPublishedTableExactly) {
  for (int n = 1; n <= 8; ++n) {
    const auto f = derive_closed_form(n);
    EXPECT_EQ(integer_coeffs(f), published_numerators()[n - 1]) << "n=" << n;
    EXPECT_EQ(f.scale, Rational(BigInt(1) << n)) << "n=" << n;
    EXPECT_EQ(f.pole_order, n + 1) << "n=" << n;
  }
}

TEST(DeriveClosedForm, MatchesInTextDimensionFormulas) {
  // Kernels displayed for dimensions 3, 4, 6 and 10 (r = n + 2).
  EXPECT_EQ(integer_coeffs(derive_closed_form(1)), ints({1, -1}));
  EXPECT_EQ(integer_coeffs(derive_closed_form(2)), ints({1, -6, 1}));
  EXPECT_EQ(integer_coeffs(derive_closed_form(4)), ints({1, -76, 230, -76, 1}));
  const auto ten = integer_coeffs(derive_closed_form(8));
  EXPECT_EQ(ten[1], -6552);
  EXPECT_EQ(ten[2], 331612);
  EXPECT_EQ(ten[3], -2485288);
  EXPECT_EQ(ten[4], 4675014);
  for (int j = 0; j <= 8; ++j) EXPECT_EQ(ten[j], ten[8 - j]);
}

TEST(DeriveClosedForm, StructureAndPalindromyUpTo32) {
  for (int n = 0; n <= kMaxClosedFormOrder; ++n) {
    const auto f = derive_closed_form(n);
    const auto c = integer_coeffs(f);
    ASSERT_EQ(f.numerator.degree(), n);
    EXPECT_EQ(c[0], 1);
    EXPECT_EQ(f.pole_order, n + 1);
    EXPECT_EQ(f.scale, Rational(BigInt(1) << n));
    const int sign = n % 2 == 0 ? 1 : -1;
    for (int j = 0; j <= n; ++j) EXPECT_EQ(c[j], sign * c[n - j]) << "n=" << n << " j=" << j;
  }
}

TEST(DeriveClosedForm, RangeChecked) {
  EXPECT_THROW(derive_closed_form(-1), std::invalid_argument);
  EXPECT_THROW(derive_closed_form(33), std::invalid_argument);
}

TEST(EvalClosedForm, WorkedExamples) {
  EXPECT_EQ(eval_closed_form(derive_closed_form(1), 1.0), 0.0);
  EXPECT_EQ(eval_closed_form(derive_closed_form(0), 0.0), 1.0);
  const double series = lerch_series(-0.3, -4.0, 0.5, 1e-13);
  EXPECT_NEAR(eval_closed_form(derive_closed_form(4), 0.3), series, 1e-12 * std::abs(series));
  EXPECT_THROW(eval_closed_form(derive_closed_form(2), -1.0), std::domain_error);
}

TEST(EvalClosedForm, RelativeErrorAgainstExactRationalEvaluation) {
  // Exact value at the double z (converted exactly to a rational).
  for (int n = 0; n <= 10; ++n) {
    const auto f = derive_closed_form(n);
    const ClosedFormEvaluator eval(f);
    for (int i = 0; i <= 1000; ++i) {
      const double z = i * 0.01;
      int e = 0;
      const double mant = std::frexp(z, &e);
      const auto m = static_cast<long long>(std::ldexp(mant, 53));
      Rational zr(m);
      if (e - 53 >= 0)
        zr *= Rational(BigInt(1) << (e - 53));
      else
        zr /= Rational(BigInt(1) << (53 - e));
      Rational p = 0;
      const auto& c = f.numerator.coeffs();
      for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * zr + *it;
      Rational den = f.scale;
      for (int k = 0; k < f.pole_order; ++k) den *= (1 + zr);
      const double exact = static_cast<double>(Rational(p / den));
      if (exact == 0.0) {
        EXPECT_EQ(eval(z), 0.0);
        continue;
      }
      EXPECT_LE(std::abs(eval(z) - exact), 1e-12 * std::abs(exact)) << "n=" << n << " z=" << z;
    }
  }
}

TEST(EvalClosedForm, AgreesWithSeriesInsideUnitDisc) {
  for (int n = 0; n <= 8; ++n) {
    const auto f = derive_closed_form(n);
    for (int i = 1; i <= 9; ++i) {
      const double z = 0.1 * i;
      const double series = lerch_series(-z, -n, 0.5, 1e-15);
      EXPECT_LE(std::abs(eval_closed_form(f, z) - series), 1e-12 * std::abs(series))
          << "n=" << n << " z=" << z;
    }
  }
}

TEST(KernelConsistency, LowOrderKernelsMatchElementaryFunctions) {
  // The series needs |z| < 1 at s = 1, so the grid stops short of x = 1.
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 101.0;
    const double t = x;
    EXPECT_NEAR(lerch_series(-t, 0.0, 0.5, 1e-15), 1.0 / (1.0 + t), 1e-12);
    EXPECT_NEAR(0.5 * lerch_series(-x * x, 1.0, 0.5, 1e-15), std::atan(x) / x, 1e-12);
  }
}

TEST(EmitLatex, MatchesPublishedText) {
  EXPECT_EQ(emit_latex(derive_closed_form(0)), "\\frac{1}{1+z}");
  EXPECT_EQ(emit_latex(derive_closed_form(1)), "\\frac{1-z}{2(1+z)^2}");
  EXPECT_EQ(emit_latex(derive_closed_form(2)), "\\frac{1-6z+z^2}{4(1+z)^3}");
  EXPECT_EQ(emit_latex(derive_closed_form(3)), "\\frac{1-23z+23z^2-z^3}{8(1+z)^4}");
  EXPECT_EQ(emit_latex(derive_closed_form(3), TermOrder::descending),
            "\\frac{-z^3+23z^2-23z+1}{8(1+z)^4}");
}

TEST(EmitLatex, ParsesBackForEveryOrder) {
  for (int n = 0; n <= kMaxClosedFormOrder; ++n) {
    const auto f = derive_closed_form(n);
    EXPECT_EQ(parse_latex(emit_latex(f)), f) << n;
    EXPECT_EQ(parse_latex(emit_latex(f, TermOrder::descending)), f) << n;
  }
  EXPECT_THROW(parse_latex("\\frac{1-z}{2(1+z)^2"), std::invalid_argument);
  EXPECT_THROW(parse_latex("1-z"), std::invalid_argument);
}

TEST(EmitCoeffs, Format) {
  EXPECT_EQ(emit_coeffs(derive_closed_form(0)), "1 / 1·(1+z)^1");
  EXPECT_EQ(emit_coeffs(derive_closed_form(7)),
            "1, -2179, 60657, -259723, 259723, -60657, 2179, -1 / 128·(1+z)^8");
}

TEST(ClosedFormJson, SchemaAndRoundTrip) {
  const auto f = derive_closed_form(8);
  const auto j = to_json(f);
  EXPECT_EQ(j.at("n"), 8);
  EXPECT_EQ(j.at("scale"), "256");
  EXPECT_EQ(j.at("pole_order"), 9);
  EXPECT_EQ(j.at("numerator").at(4), "4675014");
  for (int n : {0, 5, 32}) {
    const auto g = derive_closed_form(n);
    EXPECT_EQ(closed_form_from_json(nlohmann::json::parse(to_json(g).dump())), g);
  }
}

}  // namespace
}  // namespace catalankit
