#pragma once

// Symmetric cumulative distribution functions: right-continuous,
// non-decreasing maps R -> [0,1] with limits 0 and 1 and G(x) = 1 - G(-x).

#include "catalankit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catalankit {

class SymmetricCdf {
 public:
  using Evaluator = std::function<double(double)>;

  SymmetricCdf(std::string name, Evaluator eval, std::vector<double> breakpoints,
               std::map<std::string, double> params = {})
      : name_(std::move(name)),
        eval_(std::move(eval)),
        breakpoints_(std::move(breakpoints)),
        params_(std::move(params)) {
    std::sort(breakpoints_.begin(), breakpoints_.end());
  }

  double operator()(double x) const { return eval_(x); }

  const std::string& name() const { return name_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::map<std::string, double>& params() const { return params_; }

  // Support is bounded when the CDF is exactly 0 and 1 beyond its outermost
  // breakpoints.
  bool bounded_support() const {
    return !breakpoints_.empty() && eval_(breakpoints_.front() - 1.0) == 0.0 &&
           eval_(breakpoints_.back()) == 1.0;
  }

  // Breakpoints strictly inside (lo, hi).
  std::vector<double> breakpoints_within(double lo, double hi) const {
    std::vector<double> out;
    for (double b : breakpoints_)
      if (b > lo && b < hi) out.push_back(b);
    return out;
  }

  // "name" or "name:key=value,...", the form accepted on the command line.
  std::string spec_string() const {
    std::string s = name_;
    char sep = ':';
    for (const auto& [k, v] : params_) {
      s += sep;
      s += k + "=" + format_param(v);
      sep = ',';
    }
    return s;
  }

 private:
  static std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  std::string name_;
  Evaluator eval_;
  std::vector<double> breakpoints_;
  std::map<std::string, double> params_;
};

class UnknownCdfError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& builtin_cdf_names() {
  static const std::vector<std::string> names = {
      "rademacher", "uniform_linear", "cauchy",    "arcsine",
      "normal",     "hyperbolic_secant", "u_quadratic", "smoothed_uniform"};
  return names;
}

inline SymmetricCdf make_builtin(std::string_view name,
                                 const std::map<std::string, double>& params = {}) {
  constexpr double pi = std::numbers::pi;
  auto check_no_params = [&] {
    if (!params.empty())
      throw std::invalid_argument("cdf '" + std::string(name) + "' takes no parameters");
  };

  if (name == "rademacher") {
    check_no_params();
    // 1/2 on [-1, 1), right-continuous at both jumps.
    return {"rademacher",
            [](double x) { return x < -1.0 ? 0.0 : (x < 1.0 ? 0.5 : 1.0); },
            {-1.0, 1.0}};
  }
  if (name == "uniform_linear") {
    check_no_params();
    return {"uniform_linear",
            [](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); },
            {-1.0, 1.0}};
  }
  if (name == "cauchy") {
    check_no_params();
    return {"cauchy", [](double x) { return 0.5 + std::atan(x) / pi; }, {}};
  }
  if (name == "arcsine") {
    check_no_params();
    return {"arcsine",
            [](double x) {
              if (x <= -1.0) return 0.0;
              if (x >= 1.0) return 1.0;
              return (pi / 2 + std::asin(x)) / pi;
            },
            {-1.0, 1.0}};
  }
  if (name == "normal") {
    check_no_params();
    return {"normal",
            [](double x) { return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)); },
            {}};
  }
  if (name == "hyperbolic_secant") {
    check_no_params();
    return {"hyperbolic_secant",
            [](double x) { return 2.0 / pi * std::atan(std::exp(x)); },
            {}};
  }
  if (name == "u_quadratic") {
    for (const auto& [k, v] : params)
      if (k != "alpha")
        throw std::invalid_argument("u_quadratic: unknown parameter '" + k + "'");
    auto it = params.find("alpha");
    const double alpha = it == params.end() ? 1.0 : it->second;
    if (alpha == 0.0 || !std::isfinite(alpha))
      throw std::invalid_argument("u_quadratic: alpha must be finite and nonzero");
    const double width = std::abs(alpha);
    const double alpha3 = alpha * alpha * alpha;
    return {"u_quadratic",
            [width, alpha3](double x) {
              if (x < -width) return 0.0;
              if (x >= width) return 1.0;
              return (alpha3 + x * x * x) / (2.0 * alpha3);
            },
            {-width, width},
            {{"alpha", alpha}}};
  }
  if (name == "smoothed_uniform") {
    check_no_params();
    return {"smoothed_uniform",
            [](double y) {
              if (y <= -1.0) return 0.0;
              if (y >= 1.0) return 1.0;
              return 0.5 * (1.0 + y + std::sin(pi * y) / pi);
            },
            {-1.0, 1.0}};
  }
  throw UnknownCdfError("unknown cdf '" + std::string(name) + "'");
}

/// Parses "name" or "name:key=value[,key=value...]".
inline SymmetricCdf parse_cdf_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::map<std::string, double> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw std::invalid_argument("malformed cdf parameter '" + std::string(item) + "'");
      const std::string value(item.substr(eq + 1));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty())
        throw std::invalid_argument("malformed cdf parameter value '" + value + "'");
      params[std::string(item.substr(0, eq))] = v;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return make_builtin(name, params);
}

struct CdfValidationReport {
  double max_range_violation = 0.0;     // distance outside [0,1]
  double max_monotone_violation = 0.0;  // largest decrease between grid neighbours
  double max_symmetry_violation = 0.0;  // |G(x) + G(-x) - 1|
  double max_limit_violation = 0.0;     // |G(-1e6)| and |1 - G(1e6)|
  bool passed = false;
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kLimitTolerance = 1e-6;

/// Checks the class invariants on a grid of `grid_size` points that avoids
/// breakpoints.  Violations are reported, never thrown.
inline CdfValidationReport validate(const SymmetricCdf& cdf, int grid_size) {
  if (grid_size < 100) throw std::invalid_argument("validate: grid_size must be >= 100");
  double half_width = 10.0;
  for (double b : cdf.breakpoints()) half_width = std::max(half_width, 2.0 * std::abs(b));

  auto is_breakpoint = [&](double x) {
    for (double b : cdf.breakpoints())
      if (std::abs(x - b) <= 1e-12 * std::max(1.0, std::abs(b))) return true;
    return false;
  };

  CdfValidationReport report;
  // An irrational offset keeps the grid off breakpoints and off zero.
  const double step = 2.0 * half_width / grid_size;
  const double offset = step * (std::numbers::sqrt2 - 1.0);
  double previous = -1.0;
  bool have_previous = false;
  for (int i = 0; i < grid_size; ++i) {
    const double x = -half_width + offset + i * step;
    if (is_breakpoint(x) || is_breakpoint(-x)) continue;
    const double g = cdf(x);
    report.max_range_violation =
        std::max({report.max_range_violation, -g, g - 1.0});
    if (have_previous)
      report.max_monotone_violation = std::max(report.max_monotone_violation, previous - g);
    previous = g;
    have_previous = true;
    report.max_symmetry_violation =
        std::max(report.max_symmetry_violation, std::abs(g + cdf(-x) - 1.0));
  }
  report.max_limit_violation = std::max(std::abs(cdf(-1e6)), std::abs(1.0 - cdf(1e6)));
  report.passed = report.max_range_violation <= 0.0 && report.max_monotone_violation <= 0.0 &&
                  report.max_symmetry_violation <= kSymmetryTolerance &&
                  report.max_limit_violation <= kLimitTolerance;
  return report;
}

struct MomentCheck {
  double computed = 0.0;
  double expected = 0.0;
  QuadratureResult quadrature;
};

/// Integral of x^(2n) G(x) over [-a, a] against a^(2n+1) / (2n+1), which
/// holds for every symmetric G.
inline MomentCheck moment_check(const SymmetricCdf& cdf, double a, int n, double tol = 1e-10) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("moment_check: a must be > 0");
  if (n < 0 || n > 8) throw std::invalid_argument("moment_check: n must be in [0, 8]");
  const int power = 2 * n;
  auto f = Integrand::one_dimensional(
      [&cdf, power](double x) { return std::pow(x, power) * cdf(x); },
      cdf.breakpoints_within(-a, a));
  MomentCheck out;
  out.quadrature = integrate_1d(f, -a, a, tol);
  out.computed = out.quadrature.value;
  out.expected = std::pow(a, power + 1) / (power + 1);
  return out;
}

}  // namespace catalankit
