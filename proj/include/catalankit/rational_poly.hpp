#pragma once

// Dense polynomials with exact arbitrary-precision rational coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace catalankit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  RationalPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }
  static RationalPoly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return RationalPoly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }

  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Rational(0); }

  RationalPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * j;
    return RationalPoly(std::move(d));
  }

  // p(z) -> p(-z)
  RationalPoly reflected() const {
    std::vector<Rational> r = coeffs_;
    for (std::size_t j = 1; j < r.size(); j += 2) r[j] = -r[j];
    return RationalPoly(std::move(r));
  }

  RationalPoly& operator+=(const RationalPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
    trim();
    return *this;
  }

  RationalPoly& operator-=(const RationalPoly& other) { return *this += -other; }

  RationalPoly& operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }

  friend RationalPoly operator-(RationalPoly p) {
    for (auto& a : p.coeffs_) a = -a;
    return p;
  }
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPoly(std::move(out));
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Horner evaluation in double precision.
  double evaluate(double z) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + static_cast<double>(*it);
    return acc;
  }

  bool has_integer_coefficients() const {
    for (const auto& a : coeffs_)
      if (boost::multiprecision::denominator(a) != 1) return false;
    return true;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace catalankit
