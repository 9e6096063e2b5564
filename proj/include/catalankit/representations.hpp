#pragma once

// Integrands built from symmetric CDFs and Lerch kernels, and the registry of
// named verification cases.
//
// For r CDFs G_i and half-widths a_i with prod a_i = 1,
//
//   G = 2^(r-2) * integral over prod [-a_i, a_i] of
//           Phi(-prod x_i^2, 2 - r, 1/2) * prod G_i(x_i) dx.
//
// r = 1 reduces the kernel to arctan(x)/x, r = 2 to 1/(1 + x1^2 x2^2).

#include "catalankit/cdf.hpp"
#include "catalankit/constants.hpp"
#include "catalankit/lerch.hpp"
#include "catalankit/quadrature.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace catalankit {

inline constexpr int kMaxRepresentationDimension = 12;

/// arctan(x)/x with the removable singularity at 0 filled in.
inline double arctan_over_x(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 3.0;
  return std::atan(x) / x;
}

// 2^(r-2) Phi(-z, 2-r, 1/2) as a function of z = prod x_i^2 >= 0.
class LerchKernel {
 public:
  explicit LerchKernel(int r) : r_(r) {
    if (r < 1 || r > kMaxRepresentationDimension)
      throw std::invalid_argument("LerchKernel: dimension must be in [1, 12]");
    if (r >= 3) {
      evaluator_ = std::make_shared<ClosedFormEvaluator>(derive_closed_form(r - 2));
      factor_ = std::ldexp(1.0, r - 2);
    }
  }

  double operator()(double z) const {
    if (r_ == 1) return arctan_over_x(std::sqrt(z));
    if (r_ == 2) return 1.0 / (1.0 + z);
    return factor_ * (*evaluator_)(z);
  }

  int dimension() const { return r_; }

 private:
  int r_;
  double factor_ = 1.0;
  std::shared_ptr<const ClosedFormEvaluator> evaluator_;
};

enum class RepresentationKind { single, double_, multi };

inline const char* to_string(RepresentationKind k) {
  switch (k) {
    case RepresentationKind::single: return "single";
    case RepresentationKind::double_: return "double";
    case RepresentationKind::multi: return "multi";
  }
  return "unknown";
}

// r CDFs with half-widths a_i; the last half-width is derived so that the
// product of all of them is 1.
struct RepresentationSpec {
  RepresentationKind kind = RepresentationKind::multi;
  std::vector<SymmetricCdf> cdfs;
  std::vector<double> a_params;

  int r() const { return static_cast<int>(cdfs.size()); }

  /// Builds a spec from r CDFs and the first r-1 half-widths.
  static RepresentationSpec make(RepresentationKind kind, std::vector<SymmetricCdf> cdfs,
                                 std::vector<double> leading_a = {}) {
    const auto r = cdfs.size();
    if (r < 1 || r > static_cast<std::size_t>(kMaxRepresentationDimension))
      throw std::invalid_argument("representation dimension must be in [1, 12]");
    if ((kind == RepresentationKind::single && r != 1) ||
        (kind == RepresentationKind::double_ && r != 2))
      throw std::invalid_argument("representation kind inconsistent with dimension");
    if (leading_a.size() != r - 1)
      throw std::invalid_argument("expected " + std::to_string(r - 1) + " leading a values");
    double product = 1.0;
    for (double a : leading_a) {
      if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("a values must be positive and finite");
      product *= a;
    }
    leading_a.push_back(1.0 / product);
    return {kind, std::move(cdfs), std::move(leading_a)};
  }

  Box box() const {
    Box b;
    for (double a : a_params) b.push_back({-a, a});
    return b;
  }

  Integrand integrand() const {
    Integrand f;
    f.dim = r();
    auto cdfs_copy = cdfs;
    f.eval = [kernel = LerchKernel(r()), cdfs = std::move(cdfs_copy)](std::span<const double> x) {
      double z = 1.0;
      double weight = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        z *= x[i] * x[i];
        weight *= cdfs[i](x[i]);
      }
      return weight == 0.0 ? 0.0 : kernel(z) * weight;
    };
    for (int i = 0; i < r(); ++i)
      f.breakpoints.push_back(cdfs[i].breakpoints_within(-a_params[i], a_params[i]));
    f.singular_ends.assign(r(), {});
    return f;
  }
};

// Centralised engine settings.
struct EngineParams {
  double tol_1d = 1e-9;
  double tol_2d = 1e-9;
  double tol_3d = 1e-6;
  QmcOptions qmc{};
  std::optional<std::int64_t> samples_override;  // beats per-case sample counts

  double tolerance_for(int dim) const {
    return dim == 1 ? tol_1d : (dim == 2 ? tol_2d : tol_3d);
  }
};

/// Dispatches by dimension: adaptive (1), tensor (2, 3) or QMC (>= 4).
inline QuadratureResult integrate_box(const Integrand& f, const Box& box,
                                      const EngineParams& params) {
  if (f.dim == 1) return integrate_1d(f, box[0].lo, box[0].hi, params.tol_1d);
  if (f.dim <= 3) return integrate_tensor(f, box, params.tolerance_for(f.dim));
  return integrate_qmc(f, box, params.qmc);
}

/// Integral of G(x) arctan(x)/x over [-1, 1].
inline QuadratureResult single_integral(const SymmetricCdf& g, double tol = 1e-9) {
  auto f = Integrand::one_dimensional([g](double x) { return g(x) * arctan_over_x(x); },
                                      g.breakpoints_within(-1.0, 1.0));
  return integrate_1d(f, -1.0, 1.0, tol);
}

/// Integral of G1(x1) G2(x2) / (1 + x1^2 x2^2) over [-a, a] x [-1/a, 1/a].
inline QuadratureResult double_integral(const SymmetricCdf& g1, const SymmetricCdf& g2, double a,
                                        double tol = 1e-9) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("double_integral: a must be > 0");
  const auto spec = RepresentationSpec::make(RepresentationKind::double_, {g1, g2}, {a});
  return integrate_tensor(spec.integrand(), spec.box(), tol);
}

inline QuadratureResult multi_integral(const RepresentationSpec& spec,
                                       const EngineParams& params = {}) {
  if (spec.r() < 1 || spec.r() > kMaxRepresentationDimension)
    throw std::invalid_argument("multi_integral: dimension cap exceeded");
  return integrate_box(spec.integrand(), spec.box(), params);
}

/// Odd integrand arctan(x)/(1 + x^2 y^2) on a box; the full square [-1,1]^2
/// integrates to zero.
inline Integrand arctan_kernel_integrand() {
  Integrand f;
  f.dim = 2;
  f.eval = [](std::span<const double> v) {
    return std::atan(v[0]) / (1.0 + v[0] * v[0] * v[1] * v[1]);
  };
  f.breakpoints = {{}, {}};
  f.singular_ends = {{}, {}};
  return f;
}

inline QuadratureResult side_identity_zero(double tol = 1e-9) {
  return integrate_tensor(arctan_kernel_integrand(), {{-1.0, 1.0}, {-1.0, 1.0}}, tol);
}

inline QuadratureResult side_identity_quadrant(double tol = 1e-9) {
  return integrate_tensor(arctan_kernel_integrand(), {{0.0, 1.0}, {0.0, 1.0}}, tol);
}

/// (arctan x)^2 / x over [-1, 0]; equals -(pi G / 2 - 7 zeta(3) / 8).
inline QuadratureResult side_identity_arctan_squared(double tol = 1e-9) {
  return integrate_1d([](double x) { return std::atan(x) * arctan_over_x(x); }, -1.0, 0.0, tol);
}

/// -ln(x) / (1 + x^2) over [0, 1], with the log singularity at 0.
inline QuadratureResult log_integral(double tol = 1e-9) {
  return integrate_1d([](double x) { return -std::log(x) / (1.0 + x * x); }, 0.0, 1.0, tol, {},
                      {.lower = true, .upper = false});
}

struct InnerIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = integral of g(y) / (1 + x^2 y^2) over [-1, 1]; rhs = arctan(x)/x.
inline InnerIdentity inner_integral_identity(const SymmetricCdf& g, double x,
                                             double tol = 1e-12) {
  if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("inner_integral_identity: |x| > 1");
  const double x2 = x * x;
  auto r = integrate_1d([&](double y) { return g(y) / (1.0 + x2 * y * y); }, -1.0, 1.0, tol,
                        g.breakpoints_within(-1.0, 1.0));
  return {r.value, arctan_over_x(x)};
}

// ---------------------------------------------------------------------------
// Verification registry

// Pass rule: |value - expected| <= absolute, or, when std_errors > 0,
// |value - expected| <= std_errors * error_estimate with the error estimate
// itself capped at max_std_error.
struct Tolerance {
  double absolute = 0.0;
  double std_errors = 0.0;
  double max_std_error = 0.0;

  static Tolerance abs(double t) { return {t, 0.0, 0.0}; }
  static Tolerance standard_errors(double k, double max_se) { return {0.0, k, max_se}; }

  bool accepts(double abs_error, double error_estimate) const {
    if (std_errors > 0.0)
      return abs_error <= std_errors * error_estimate && error_estimate <= max_std_error;
    return abs_error <= absolute;
  }
};

// An integral over a box that is not one of the CDF representations.
struct RawIntegral {
  Integrand integrand;
  Box box;
};

struct VerificationCase {
  std::string name;
  std::variant<RepresentationSpec, RawIntegral> source;
  std::string expected;  // decimal, >= 30 significant digits where nonzero
  Tolerance tolerance;
  std::string provenance;
  std::optional<std::int64_t> samples;  // QMC points per randomization
  std::optional<double> tol;            // engine tolerance for this case

  int dimension() const {
    return std::visit(
        [](const auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, RepresentationSpec>)
            return s.r();
          else
            return s.integrand.dim;
        },
        source);
  }
};

struct CaseOutcome {
  std::string name;
  std::optional<QuadratureResult> result;  // empty when the engine threw
  std::string expected;
  double abs_error = 0.0;
  bool passed = false;
  std::string message;
};

namespace detail {

inline std::string catalan_string() { return std::string(kCatalanDigits); }

inline std::string quadrant_string(bool negative) {
  const HighPrecision q = quadrant_identity_value();
  return to_decimal_string(negative ? HighPrecision(-q) : q, 40);
}

inline VerificationCase spec_case(std::string name, RepresentationKind kind,
                                  std::vector<SymmetricCdf> cdfs, std::vector<double> a,
                                  Tolerance tolerance, std::string provenance) {
  return {std::move(name),
          RepresentationSpec::make(kind, std::move(cdfs), std::move(a)),
          catalan_string(),
          tolerance,
          std::move(provenance),
          std::nullopt,
          std::nullopt};
}

}  // namespace detail

/// Every identity verified by the tool.
inline std::vector<VerificationCase> default_registry() {
  using detail::spec_case;
  using K = RepresentationKind;
  const auto rad = make_builtin("rademacher");
  std::vector<VerificationCase> cases;

  for (const char* name : {"uniform_linear", "cauchy", "arcsine", "normal"})
    cases.push_back(spec_case(std::string("single_") + name, K::single, {make_builtin(name)}, {},
                              Tolerance::abs(1e-9), "single integral G(x) arctan(x)/x"));

  cases.push_back({"arctan_over_x",
                   RawIntegral{Integrand::one_dimensional(arctan_over_x), {{0.0, 1.0}}},
                   detail::catalan_string(), Tolerance::abs(1e-9),
                   "integral of arctan(x)/x over [0,1]", std::nullopt, std::nullopt});
  cases.push_back({"log_over_one_plus_square",
                   RawIntegral{Integrand::one_dimensional(
                                   [](double x) { return -std::log(x) / (1.0 + x * x); }, {},
                                   {.lower = true, .upper = false}),
                               {{0.0, 1.0}}},
                   detail::catalan_string(), Tolerance::abs(1e-9),
                   "-integral of ln(x)/(1+x^2) over [0,1]", std::nullopt, std::nullopt});

  const auto dbl = Tolerance::abs(1e-8);
  cases.push_back(spec_case("double_rademacher", K::double_, {rad, rad}, {1.0}, dbl,
                            "Rademacher pair: 1/(1+x^2y^2) on the unit square"));
  cases.push_back(spec_case("double_hyperbolic_secant", K::double_,
                            {make_builtin("hyperbolic_secant"), make_builtin("hyperbolic_secant")},
                            {1.0}, dbl, "hyperbolic secant CDF pair"));
  cases.push_back(spec_case("double_normal", K::double_,
                            {make_builtin("normal"), make_builtin("normal")}, {1.0}, dbl,
                            "standard normal CDF pair"));
  cases.push_back(spec_case("double_cauchy_rademacher", K::double_,
                            {make_builtin("cauchy"), rad}, {1.0}, dbl, "Cauchy x Rademacher"));
  for (auto [label, alpha] : {std::pair{"0.5", 0.5}, {"1", 1.0}, {"2", 2.0}}) {
    const auto u = make_builtin("u_quadratic", {{"alpha", alpha}});
    cases.push_back(spec_case(std::string("double_u_quadratic_alpha_") + label, K::double_, {u, u},
                              {1.0}, dbl, "U-quadratic CDF pair"));
  }
  const double g = catalan_constant().to_double();
  for (auto [label, a] : {std::pair{"0.5", 0.5}, {"pi", std::numbers::pi}, {"e", std::numbers::e},
                          {"G", g}})
    cases.push_back(spec_case(std::string("double_rademacher_a_") + label, K::double_, {rad, rad}, {a}, dbl,
                              "Rademacher pair with rescaled box"));

  const Integrand arctan_kernel = arctan_kernel_integrand();
  cases.push_back({"side_zero_square", RawIntegral{arctan_kernel, {{-1.0, 1.0}, {-1.0, 1.0}}}, "0",
                   dbl, "odd integrand arctan(x)/(1+x^2y^2) over [-1,1]^2", std::nullopt,
                   std::nullopt});
  cases.push_back({"side_quadrant", RawIntegral{arctan_kernel, {{0.0, 1.0}, {0.0, 1.0}}},
                   detail::quadrant_string(false), dbl,
                   "arctan(x)/(1+x^2y^2) over [0,1]^2 = pi G/2 - 7 zeta(3)/8", std::nullopt,
                   std::nullopt});
  cases.push_back(
      {"side_arctan_squared",
       RawIntegral{Integrand::one_dimensional(
                       [](double x) { return std::atan(x) * arctan_over_x(x); }),
                   {{-1.0, 0.0}}},
       detail::quadrant_string(true), dbl, "(arctan x)^2/x over [-1,0]", std::nullopt,
       std::nullopt});

  cases.push_back(spec_case("dim3", K::multi, {rad, rad, rad}, {1.0, 1.0}, Tolerance::abs(1e-6),
                            "three-dimensional Lerch kernel, Rademacher CDFs"));
  for (int r : {4, 5, 6, 10}) {
    auto c = spec_case("dim" + std::to_string(r), K::multi, std::vector<SymmetricCdf>(r, rad),
                       std::vector<double>(r - 1, 1.0),
                       Tolerance::standard_errors(4.0, r == 10 ? 1e-2 : 1e-3),
                       std::to_string(r) + "-dimensional Lerch kernel, Rademacher CDFs");
    if (r == 10) c.samples = std::int64_t{1} << 22;
    cases.push_back(std::move(c));
  }
  return cases;
}

inline bool matches_filter(const std::string& name, const std::optional<std::string>& filter) {
  return !filter || fnmatch(filter->c_str(), name.c_str(), 0) == 0;
}

inline QuadratureResult run_case(const VerificationCase& c, EngineParams params) {
  if (c.samples && !params.samples_override) params.qmc.samples = *c.samples;
  if (params.samples_override) params.qmc.samples = *params.samples_override;
  if (c.tol) params.tol_1d = params.tol_2d = params.tol_3d = *c.tol;
  return std::visit(
      [&](const auto& s) {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, RepresentationSpec>)
          return multi_integral(s, params);
        else
          return integrate_box(s.integrand, s.box, params);
      },
      c.source);
}

/// Runs the cases whose names match the glob filter; failures (including
/// engine exceptions) are reported in the outcome, never thrown.  Outcomes
/// are ordered by case name.
inline std::vector<CaseOutcome> run_registry(const std::vector<VerificationCase>& cases,
                                             const std::optional<std::string>& filter,
                                             const EngineParams& params = {}) {
  std::vector<CaseOutcome> out;
  for (const auto& c : cases) {
    if (!matches_filter(c.name, filter)) continue;
    CaseOutcome o;
    o.name = c.name;
    o.expected = c.expected;
    try {
      o.result = run_case(c, params);
      const double expected = std::strtod(c.expected.c_str(), nullptr);
      o.abs_error = std::abs(o.result->value - expected);
      o.passed = c.tolerance.accepts(o.abs_error, o.result->error_estimate);
    } catch (const std::exception& e) {
      o.passed = false;
      o.abs_error = std::numeric_limits<double>::infinity();
      o.message = e.what();
    }
    out.push_back(std::move(o));
  }
  std::sort(out.begin(), out.end(),
            [](const CaseOutcome& a, const CaseOutcome& b) { return a.name < b.name; });
  return out;
}

inline std::vector<CaseOutcome> run_registry(const std::optional<std::string>& filter = std::nullopt,
                                             const EngineParams& params = {}) {
  return run_registry(default_registry(), filter, params);
}

}  // namespace catalankit
