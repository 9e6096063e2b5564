#pragma once

// High-precision reference constants: Catalan's constant G, pi and zeta(3).
//
// Every constant is carried at 80 decimal digits internally and exposed as a
// RefConstant (digit string + decimal exponent).  Catalan's constant and
// zeta(3) are recomputed on demand from rapidly convergent series that come
// with computable remainder bounds, so the stored digits can be checked
// against an independent computation.

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace catalankit {

using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>>;

// A decimal constant stored as significant digits and an exponent:
// value = sign * 0.d1 d2 d3 ... * 10^exponent, with d1 != 0.
struct RefConstant {
  std::string name;
  bool negative = false;
  std::string digits;
  int exponent = 0;
  std::string source;

  static RefConstant parse(std::string_view name, std::string_view text,
                           std::string_view source = {}) {
    RefConstant c;
    c.name = std::string(name);
    c.source = std::string(source);
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      c.negative = text[i] == '-';
      ++i;
    }
    bool seen_point = false;
    int int_digits = 0;
    int leading_zeros_after_point = 0;
    for (; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '.') {
        if (seen_point) throw std::invalid_argument("RefConstant: two decimal points");
        seen_point = true;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("RefConstant: invalid character in '" +
                                    std::string(text) + "'");
      if (c.digits.empty() && ch == '0') {
        if (seen_point) ++leading_zeros_after_point;
        continue;
      }
      c.digits.push_back(ch);
      if (!seen_point) ++int_digits;
    }
    if (c.digits.empty()) throw std::invalid_argument("RefConstant: zero or empty value");
    c.exponent = int_digits > 0 ? int_digits : -leading_zeros_after_point;
    return c;
  }

  // Plain positional rendering; parse(render()) reproduces the same digits.
  std::string render() const {
    std::string out = negative ? "-" : "";
    if (exponent <= 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-exponent), '0');
      out += digits;
      return out;
    }
    auto e = static_cast<std::size_t>(exponent);
    if (digits.size() <= e) {
      out += digits;
      out.append(e - digits.size(), '0');
      return out;
    }
    out += digits.substr(0, e);
    out += '.';
    out += digits.substr(e);
    return out;
  }

  int significant_digits() const { return static_cast<int>(digits.size()); }

  // Round-to-nearest projection (strtod is correctly rounded).
  double to_double() const { return std::strtod(render().c_str(), nullptr); }

  HighPrecision value() const { return HighPrecision(render()); }
};

namespace detail {

// Pair term 1/(4j+1)^2 - 1/(4j+3)^2 of the Catalan series.
inline HighPrecision catalan_pair(std::uint64_t j) {
  HighPrecision a = 4 * HighPrecision(static_cast<double>(j)) + 1;
  HighPrecision b = a + 2;
  return 2 * (a + b) / (a * a * b * b);
}

// m-th derivative of (4x+c)^-2 at x.
inline HighPrecision shifted_inverse_square_derivative(const HighPrecision& x, int c,
                                                       unsigned m) {
  HighPrecision base = 4 * x + c;
  HighPrecision coeff = boost::math::factorial<HighPrecision>(m + 1) *
                        boost::multiprecision::pow(HighPrecision(4), m);
  HighPrecision v = coeff / boost::multiprecision::pow(base, static_cast<int>(m + 2));
  return (m % 2 == 0) ? v : HighPrecision(-v);
}

// Sum of pair terms j = first..last by Euler-Maclaurin with 24 Bernoulli
// corrections.  Requires first >= 1000, where the remainder is below 1e-100.
inline HighPrecision catalan_pair_tail_sum(std::uint64_t first, std::uint64_t last) {
  const HighPrecision lo = static_cast<double>(first);
  const HighPrecision hi = static_cast<double>(last);
  auto f = [](const HighPrecision& x, unsigned m) {
    return shifted_inverse_square_derivative(x, 1, m) -
           shifted_inverse_square_derivative(x, 3, m);
  };
  auto antiderivative = [](const HighPrecision& x) {
    return -1 / (4 * (4 * x + 1)) + 1 / (4 * (4 * x + 3));
  };
  HighPrecision sum = antiderivative(hi) - antiderivative(lo) + (f(lo, 0) + f(hi, 0)) / 2;
  for (unsigned k = 1; k <= 24; ++k) {
    HighPrecision coeff = boost::math::bernoulli_b2n<HighPrecision>(static_cast<int>(k)) /
                          boost::math::factorial<HighPrecision>(2 * k);
    sum += coeff * (f(hi, 2 * k - 1) - f(lo, 2 * k - 1));
  }
  return sum;
}

inline constexpr std::uint64_t kDirectPairs = 1000;

}  // namespace detail

/// Sum_{k=0}^{n} (-1)^k / (2k+1)^2 at 80-digit precision.
///
/// Terms are summed in pairs; beyond 2000 pairs the tail of the pair sum is
/// evaluated by Euler-Maclaurin, which keeps n = 1e8 cheap.
inline HighPrecision catalan_partial_sum(std::uint64_t n) {
  const bool even = (n % 2 == 0);
  if (n == 0) return 1;
  // Odd index 2M+1 closes pair M.
  const std::uint64_t odd_n = even ? n - 1 : n;
  const std::uint64_t pairs = (odd_n - 1) / 2 + 1;
  HighPrecision sum = 0;
  if (pairs <= 2 * detail::kDirectPairs) {
    for (std::uint64_t j = 0; j < pairs; ++j) sum += detail::catalan_pair(j);
  } else {
    for (std::uint64_t j = 0; j < detail::kDirectPairs; ++j) sum += detail::catalan_pair(j);
    sum += detail::catalan_pair_tail_sum(detail::kDirectPairs, pairs - 1);
  }
  if (even) {
    HighPrecision d = 2 * HighPrecision(static_cast<double>(n)) + 1;
    sum += 1 / (d * d);
  }
  return sum;
}

/// Same sum by direct pairwise accumulation, with no Euler-Maclaurin step.
inline HighPrecision catalan_partial_sum_direct(std::uint64_t n) {
  HighPrecision sum = 0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    HighPrecision d = 2 * HighPrecision(static_cast<double>(k)) + 1;
    sum += ((k % 2) ? -1 : 1) / (d * d);
  }
  return sum;
}

/// Alternating-series remainder bound |G - S_n| <= 1/(2n+3)^2.
inline double catalan_partial_sum_bound(std::uint64_t n) {
  const double d = 2.0 * static_cast<double>(n) + 3.0;
  return 1.0 / (d * d);
}

// Cohen-Villegas-Zagier acceleration of sum (-1)^k a_k where a_k is the k-th
// moment of a positive measure on [0,1].  With a_k = 1/(2k+1)^2 (moments of
// -ln(t) dt / (2 sqrt t)) the error after `terms` steps is at most
// 2 G / (3 + sqrt 8)^terms.
struct CatalanAcceleration {
  HighPrecision value;
  HighPrecision error_bound;
  int terms = 0;
};

inline CatalanAcceleration catalan_accelerated(int terms) {
  const HighPrecision base = 3 + boost::multiprecision::sqrt(HighPrecision(8));
  HighPrecision d = boost::multiprecision::pow(base, terms);
  d = (d + 1 / d) / 2;
  HighPrecision b = -1;
  HighPrecision c = -d;
  HighPrecision s = 0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    HighPrecision odd = 2 * k + 1;
    s += c / (odd * odd);
    b = HighPrecision(k + terms) * HighPrecision(k - terms) * b /
        (HighPrecision(2 * k + 1) * HighPrecision(k + 1) / 2);
  }
  CatalanAcceleration out;
  out.value = s / d;
  out.error_bound = 2 / boost::multiprecision::pow(base, terms);
  out.terms = terms;
  return out;
}

inline constexpr std::string_view kCatalanDigits =
    "0.915965594177219015054603514932384110774149374281672134266498119621763";
inline constexpr std::string_view kZeta3Digits =
    "1.202056903159594285399738161511449990764986292340498881792271555341838";
inline constexpr std::string_view kPiDigits =
    "3.141592653589793238462643383279502884197169399375105820974944592307816";

inline const RefConstant& catalan_constant() {
  static const RefConstant c = RefConstant::parse(
      "G", kCatalanDigits, "alternating series sum (-1)^k/(2k+1)^2");
  return c;
}

inline const RefConstant& zeta3_constant() {
  static const RefConstant c =
      RefConstant::parse("zeta3", kZeta3Digits, "Apery constant sum 1/n^3");
  return c;
}

inline const RefConstant& pi_constant() {
  static const RefConstant c = RefConstant::parse("pi", kPiDigits, "pi");
  return c;
}

/// G recomputed by series acceleration; 90 steps bound the error below 1e-68.
inline HighPrecision catalan_reference() { return catalan_accelerated(90).value; }

// zeta(3) = 5/2 sum_{k>=1} (-1)^{k+1} / (k^3 binom(2k,k)).  Terms are
// alternating and decreasing, so the remainder is below the first omitted
// term (which shrinks by roughly 4x per step).
struct Zeta3Series {
  HighPrecision value;
  HighPrecision error_bound;
  int terms = 0;
};

inline Zeta3Series zeta3_series(int terms) {
  HighPrecision sum = 0;
  HighPrecision binom = 1;  // binom(2k, k)
  HighPrecision term = 0;
  for (int k = 1; k <= terms + 1; ++k) {
    binom = binom * (2 * k) * (2 * k - 1) / (HighPrecision(k) * k);
    HighPrecision kk = k;
    term = 1 / (kk * kk * kk * binom);
    if (k == terms + 1) break;
    sum += (k % 2 == 1) ? term : HighPrecision(-term);
  }
  Zeta3Series out;
  out.value = sum * 5 / 2;
  out.error_bound = term * 5 / 2;
  out.terms = terms;
  return out;
}

inline HighPrecision zeta3_reference() { return zeta3_series(120).value; }

inline HighPrecision pi_reference() {
  return boost::math::constants::pi<HighPrecision>();
}

/// pi G / 2 - 7 zeta(3) / 8, the first-quadrant value of the odd arctan integral.
inline HighPrecision quadrant_identity_value() {
  return pi_reference() * catalan_reference() / 2 - 7 * zeta3_reference() / 8;
}

/// Fixed-point rendering with `decimals` digits after the point.
inline std::string to_decimal_string(const HighPrecision& x, int decimals) {
  return x.str(decimals, std::ios_base::fixed);
}

}  // namespace catalankit
