#pragma once

// Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (k + a)^s.
//
// Numerically, Phi is summed directly with a rigorous tail bound.
// Symbolically, Phi(-z, -n, 1/2) is generated exactly by applying the operator
// (a + z d/dz), which lowers s by one, n times to Phi(z, 0, a) = 1/(1 - z).
// Denominators stay factored as powers of (1 - z) throughout.

#include "catalankit/errors.hpp"
#include "catalankit/rational_poly.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catalankit {

inline constexpr long kLerchTermCap = 10'000'000;
inline constexpr int kMaxClosedFormOrder = 32;

namespace detail {

// Direct summation in type T; also reports the largest term magnitude seen.
template <class T>
T lerch_sum(T z, T s, T a, double tol, T& largest) {
  using std::abs;
  using std::pow;
  const T az = abs(z);
  const T one(1);
  T sum(0);
  T compensation(0);
  T zk(1);  // z^k
  largest = T(0);
  for (long k = 0; k < kLerchTermCap; ++k) {
    const T term = zk * pow(k + a, -s);
    if (abs(term) > largest) largest = abs(term);
    // Neumaier summation.
    const T t = sum + term;
    compensation += abs(sum) >= abs(term) ? T((sum - t) + term) : T((term - t) + sum);
    sum = t;

    const T z_next = zk * z;
    const T next = abs(z_next) * pow(k + 1 + a, -s);
    T tail;
    if (az < one) {
      const T q = s >= 0 ? az : T(az * pow((k + 2 + a) / (k + 1 + a), -s));
      if (q >= one) {
        zk = z_next;
        continue;
      }
      tail = next / (one - q);
    } else if (z < 0) {
      tail = next;
    } else {
      tail = pow(k + a, one - s) / (s - one);
    }
    if (tail < tol) return sum + compensation;
    zk = z_next;
  }
  throw NonConvergenceError("lerch_series: term cap exceeded");
}

}  // namespace detail

/// Phi(z, s, a) summed until the tail bound drops below tol.
///
/// Valid for |z| < 1 (any real s), or |z| = 1 with s > 1.  For |z| < 1 the
/// tail after term k is bounded by |t_{k+1}| / (1 - q) where q bounds every
/// later term ratio; on |z| = 1 the alternating bound (z = -1) or the integral
/// bound (z = 1) is used.  Sums whose terms cancel heavily are redone in
/// 50-digit arithmetic.
inline double lerch_series(double z, double s, double a, double tol) {
  if (!(a > 0.0)) throw std::domain_error("lerch_series: a must be positive");
  if (!(tol >= 1e-15)) throw std::domain_error("lerch_series: tol must be >= 1e-15");
  const double az = std::abs(z);
  if (az > 1.0 || (az == 1.0 && !(s > 1.0)))
    throw std::domain_error("lerch_series: outside the convergence domain");
  if (z == 0.0) return std::pow(a, -s);

  double largest = 0.0;
  const double sum = detail::lerch_sum(z, s, a, tol, largest);
  if (largest <= 8.0 * std::abs(sum)) return sum;
  using Wide = boost::multiprecision::cpp_bin_float_50;
  Wide wide_largest;
  return static_cast<double>(detail::lerch_sum(Wide(z), Wide(s), Wide(a), tol, wide_largest));
}

/// Phi(-z, -n, 1/2) = numerator(z) / (scale * (1 + z)^pole_order).
struct LerchClosedForm {
  int n = 0;
  RationalPoly numerator;
  int pole_order = 1;
  Rational scale = 1;

  friend bool operator==(const LerchClosedForm&, const LerchClosedForm&) = default;
};

inline LerchClosedForm derive_closed_form(int n) {
  if (n < 0 || n > kMaxClosedFormOrder)
    throw std::invalid_argument("derive_closed_form: n must be in [0, 32]");
  const Rational half(1, 2);
  const RationalPoly one_minus_z{Rational(1), Rational(-1)};
  const RationalPoly z_poly{Rational(0), Rational(1)};

  // Phi(z, -k, 1/2) = num / (1 - z)^m
  RationalPoly num{Rational(1)};
  int m = 1;
  for (int k = 0; k < n; ++k) {
    // (1/2 + z d/dz) [N / (1-z)^m] = [N(1-z)/2 + z (N'(1-z) + m N)] / (1-z)^(m+1)
    RationalPoly next = num * one_minus_z * half +
                        z_poly * (num.derivative() * one_minus_z + num * Rational(m));
    num = std::move(next);
    ++m;
  }

  RationalPoly reflected = num.reflected();
  const Rational lead = reflected.coeff(0);
  LerchClosedForm form;
  form.n = n;
  form.pole_order = m;
  form.scale = 1 / lead;
  form.numerator = reflected * form.scale;
  return form;
}

// Double-precision image of a closed form, for repeated evaluation.
class ClosedFormEvaluator {
 public:
  explicit ClosedFormEvaluator(const LerchClosedForm& form)
      : scale_(static_cast<double>(form.scale)), pole_order_(form.pole_order) {
    for (const auto& c : form.numerator.coeffs()) coeffs_.push_back(static_cast<double>(c));
  }

  double operator()(double z) const {
    if (z == -1.0) throw std::domain_error("eval_closed_form: pole at z = -1");
    if (z < -1.0) throw std::domain_error("eval_closed_form: z must exceed -1");
    return numerator(z) / (scale_ * integer_power(1.0 + z, pole_order_));
  }

  // Compensated Horner: the rounding errors of every product and sum are
  // captured exactly (fma / TwoSum) and folded back in, which gives the
  // accuracy of Horner in twice the working precision.  The alternating
  // numerators cancel heavily near their roots.
  double numerator(double z) const {
    double acc = 0.0;
    double correction = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const double product = acc * z;
      const double product_error = std::fma(acc, z, -product);
      const double sum = product + *it;
      const double bv = sum - product;
      const double sum_error = (product - (sum - bv)) + (*it - bv);
      acc = sum;
      correction = correction * z + (product_error + sum_error);
    }
    return acc + correction;
  }

  double scale() const { return scale_; }
  int pole_order() const { return pole_order_; }

 private:
  static double integer_power(double base, int e) {
    double result = 1.0;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  std::vector<double> coeffs_;
  double scale_;
  int pole_order_;
};

/// Evaluates P(z) / (scale (1+z)^m) at real z > -1.
inline double eval_closed_form(const LerchClosedForm& form, double z) {
  return ClosedFormEvaluator(form)(z);
}

namespace detail {

inline std::string exponent_suffix(int e) {
  if (e == 1) return "";
  const std::string digits = std::to_string(e);
  return digits.size() == 1 ? "^" + digits : "^{" + digits + "}";
}

inline std::string integer_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) != 1)
    throw std::logic_error("closed form numerator has a non-integer coefficient");
  return boost::multiprecision::numerator(r).str();
}

}  // namespace detail

enum class TermOrder { ascending, descending };

/// LaTeX fraction, e.g. "\frac{1-6z+z^2}{4(1+z)^3}".
inline std::string emit_latex(const LerchClosedForm& form,
                              TermOrder order = TermOrder::ascending) {
  const auto& c = form.numerator.coeffs();
  std::string num;
  auto append_term = [&](std::size_t j) {
    if (c[j] == 0) return;
    std::string mag = detail::integer_string(abs(c[j]));
    const bool negative = c[j] < 0;
    if (negative)
      num += '-';
    else if (!num.empty())
      num += '+';
    if (j == 0) {
      num += mag;
      return;
    }
    if (mag != "1") num += mag;
    num += 'z';
    num += detail::exponent_suffix(static_cast<int>(j));
  };
  if (order == TermOrder::ascending) {
    for (std::size_t j = 0; j < c.size(); ++j) append_term(j);
  } else {
    for (std::size_t j = c.size(); j-- > 0;) append_term(j);
  }
  if (num.empty()) num = "0";

  std::string den;
  const std::string scale = detail::integer_string(form.scale);
  if (scale == "1" && form.pole_order == 1) {
    den = "1+z";
  } else {
    if (scale != "1") den = scale;
    den += "(1+z)" + detail::exponent_suffix(form.pole_order);
  }
  return "\\frac{" + num + "}{" + den + "}";
}

/// Inverse of emit_latex (either term order).
inline LerchClosedForm parse_latex(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument(std::string("parse_latex: ") + why + " in '" +
                                std::string(text) + "'");
  };
  std::size_t pos = 0;
  auto expect = [&](std::string_view token) {
    if (text.substr(pos, token.size()) != token) fail("unexpected token");
    pos += token.size();
  };
  auto read_digits = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  };
  auto read_exponent = [&]() -> int {
    if (pos >= text.size() || text[pos] != '^') return 1;
    ++pos;
    std::string d;
    if (pos < text.size() && text[pos] == '{') {
      ++pos;
      d = read_digits();
      expect("}");
    } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      d = std::string(1, text[pos++]);
    }
    if (d.empty()) fail("missing exponent");
    return std::stoi(d);
  };

  expect("\\frac{");
  std::vector<Rational> coeffs;
  bool first = true;
  while (pos < text.size() && text[pos] != '}') {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("missing sign between terms");
    }
    first = false;
    std::string digits = read_digits();
    int power = 0;
    if (pos < text.size() && text[pos] == 'z') {
      ++pos;
      power = read_exponent();
    } else if (digits.empty()) {
      fail("empty term");
    }
    BigInt mag = digits.empty() ? BigInt(1) : BigInt(digits);
    if (coeffs.size() <= static_cast<std::size_t>(power)) coeffs.resize(power + 1);
    coeffs[power] += Rational(mag * sign);
  }
  expect("}{");
  LerchClosedForm form;
  std::string scale = text.substr(pos, 4) == "1+z}" ? std::string() : read_digits();
  form.scale = scale.empty() ? Rational(1) : Rational(BigInt(scale));
  if (text.substr(pos, 5) == "(1+z)") {
    pos += 5;
    form.pole_order = read_exponent();
  } else {
    expect("1+z");
    form.pole_order = 1;
  }
  expect("}");
  if (pos != text.size()) fail("trailing characters");
  form.numerator = RationalPoly(std::move(coeffs));
  form.n = form.pole_order - 1;
  return form;
}

/// "1, -6, 1 / 4·(1+z)^3": ascending integer numerator coefficients, then the
/// scale and pole order.
inline std::string emit_coeffs(const LerchClosedForm& form) {
  std::string out;
  const auto& c = form.numerator.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j) out += ", ";
    out += detail::integer_string(c[j]);
  }
  out += " / " + detail::integer_string(form.scale) + "·(1+z)^" +
         std::to_string(form.pole_order);
  return out;
}

inline nlohmann::json to_json(const LerchClosedForm& form) {
  nlohmann::json numerator = nlohmann::json::array();
  for (const auto& a : form.numerator.coeffs()) numerator.push_back(detail::integer_string(a));
  return {{"n", form.n},
          {"scale", detail::integer_string(form.scale)},
          {"pole_order", form.pole_order},
          {"numerator", numerator}};
}

inline LerchClosedForm closed_form_from_json(const nlohmann::json& j) {
  LerchClosedForm form;
  form.n = j.at("n").get<int>();
  form.scale = Rational(BigInt(j.at("scale").get<std::string>()));
  form.pole_order = j.at("pole_order").get<int>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("numerator")) coeffs.emplace_back(BigInt(c.get<std::string>()));
  form.numerator = RationalPoly(std::move(coeffs));
  return form;
}

}  // namespace catalankit
