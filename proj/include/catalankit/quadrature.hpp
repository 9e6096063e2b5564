#pragma once

// Integration engines over boxes:
//   integrate_1d      globally adaptive Gauss-Kronrod (10/21) with breakpoint
//                     splitting and power-law regularisation of singular ends
//   integrate_tensor  iterated adaptive quadrature for 2 and 3 dimensions
//   integrate_qmc     randomly digitally shifted Sobol points, R replications

#include "catalankit/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/random/sobol.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace catalankit {

enum class Method { adaptive, tensor, qmc };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::adaptive: return "adaptive";
    case Method::tensor: return "tensor";
    case Method::qmc: return "qmc";
  }
  return "unknown";
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const { return hi - lo; }
};

using Box = std::vector<Interval>;

// Integrable endpoint singularities (e.g. log) on one axis.
struct SingularEnds {
  bool lower = false;
  bool upper = false;
};

struct Integrand {
  int dim = 1;
  std::function<double(std::span<const double>)> eval;
  std::vector<std::vector<double>> breakpoints;  // per axis, sorted
  std::vector<SingularEnds> singular_ends;       // per axis

  static Integrand one_dimensional(std::function<double(double)> f,
                                   std::vector<double> breakpoints = {},
                                   SingularEnds ends = {}) {
    Integrand g;
    g.dim = 1;
    g.eval = [f = std::move(f)](std::span<const double> x) { return f(x[0]); };
    std::sort(breakpoints.begin(), breakpoints.end());
    g.breakpoints = {std::move(breakpoints)};
    g.singular_ends = {ends};
    return g;
  }

  const std::vector<double>& axis_breakpoints(int axis) const {
    static const std::vector<double> none;
    return static_cast<std::size_t>(axis) < breakpoints.size() ? breakpoints[axis] : none;
  }

  SingularEnds axis_singular_ends(int axis) const {
    return static_cast<std::size_t>(axis) < singular_ends.size() ? singular_ends[axis]
                                                                  : SingularEnds{};
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  Method method = Method::adaptive;
  std::optional<std::uint64_t> seed;
};

inline constexpr std::int64_t kAdaptiveEvaluationCap = 10'000'000;
inline constexpr std::int64_t kTensorEvaluationCap = 100'000'000;
inline constexpr int kMaxQmcDimension = 12;
inline constexpr int kDefaultRandomizations = 16;

/// Worker count from CATALANKIT_THREADS (0 or unset = hardware concurrency).
inline unsigned default_thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("CATALANKIT_THREADS")) n = static_cast<unsigned>(std::atoi(env));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

namespace detail {

struct Estimate {
  double value = 0.0;
  double error = 0.0;  // error already carried by the sample (inner integrals)
};

// Maps u in [0,1] onto a panel; singular ends are flattened by x ~ u^3.
struct PanelMap {
  double lo, hi;
  enum class Kind { linear, cubic_lower, cubic_upper } kind = Kind::linear;

  std::pair<double, double> operator()(double u) const {  // (x, dx/du)
    const double w = hi - lo;
    switch (kind) {
      case Kind::linear: return {lo + w * u, w};
      case Kind::cubic_lower: return {lo + w * u * u * u, 3.0 * w * u * u};
      case Kind::cubic_upper: {
        const double v = 1.0 - u;
        return {hi - w * v * v * v, 3.0 * w * v * v};
      }
    }
    return {0.0, 0.0};
  }

  bool touches_singular_end(double x) const {
    return (kind == Kind::cubic_lower && x == lo) || (kind == Kind::cubic_upper && x == hi);
  }
};

struct Panel {
  PanelMap map;
  double u_lo, u_hi;
  double value = 0.0;
  double rule_error = 0.0;   // |Kronrod - Gauss|
  double carried_error = 0.0;
  bool refinable = true;
};

// Gauss-Kronrod 10/21 on map restricted to [u_lo, u_hi].
template <typename F>
void apply_rule(Panel& panel, F& f, std::int64_t& evaluations) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  using GL = boost::math::quadrature::gauss<double, 10>;
  static const auto& xk = GK::abscissa();
  static const auto& wk = GK::weights();
  static const auto& wg = GL::weights();

  const double center = 0.5 * (panel.u_lo + panel.u_hi);
  const double half = 0.5 * (panel.u_hi - panel.u_lo);
  double kronrod = 0.0, gauss = 0.0, carried = 0.0;
  for (std::size_t i = 0; i < xk.size(); ++i) {
    const int copies = (i == 0) ? 1 : 2;
    for (int c = 0; c < copies; ++c) {
      const double u = center + (c == 0 ? xk[i] : -xk[i]) * half;
      const auto [x, jac] = panel.map(u);
      // A node that rounds onto a singular end carries no resolvable mass.
      if (panel.map.touches_singular_end(x)) continue;
      const Estimate e = f(x);
      ++evaluations;
      if (std::isnan(e.value)) throw EvaluationError("integrand returned NaN");
      const double fx = e.value * jac;
      kronrod += wk[i] * fx;
      carried += wk[i] * e.error * std::abs(jac);
      if (i % 2 == 1) gauss += wg[i / 2] * fx;
    }
  }
  panel.value = kronrod * half;
  panel.rule_error = std::abs(kronrod - gauss) * half;
  panel.carried_error = carried * half;
  const double x_lo = panel.map(panel.u_lo).first;
  const double x_hi = panel.map(panel.u_hi).first;
  panel.refinable = half > 64.0 * std::numeric_limits<double>::epsilon() *
                               std::max(1.0, std::abs(center)) &&
                    x_hi > x_lo;
}

// Globally adaptive integration of f over [lo, hi] split at breakpoints.
// Converges when the summed rule error plus carried error is <= tol.
template <typename F>
QuadratureResult adaptive(F&& f, double lo, double hi, const std::vector<double>& breakpoints,
                          SingularEnds ends, double tol, std::int64_t& evaluations,
                          std::int64_t cap) {
  std::vector<double> cuts{lo};
  for (double b : breakpoints)
    if (b > lo && b < hi) cuts.push_back(b);
  cuts.push_back(hi);
  if (ends.lower && ends.upper && cuts.size() == 2) cuts.insert(cuts.begin() + 1, 0.5 * (lo + hi));

  auto cmp = [](const Panel& a, const Panel& b) { return a.rule_error < b.rule_error; };
  std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);
  std::vector<Panel> finished;

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p{{cuts[i], cuts[i + 1]}, 0.0, 1.0};
    if (ends.lower && i == 0)
      p.map.kind = PanelMap::Kind::cubic_lower;
    else if (ends.upper && i + 2 == cuts.size())
      p.map.kind = PanelMap::Kind::cubic_upper;
    apply_rule(p, f, evaluations);
    queue.push(p);
  }

  auto totals = [&] {
    // Fixed-order summation of everything, for the reported numbers.
    std::vector<Panel> all = finished;
    auto copy = queue;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) {
      return a.map.lo != b.map.lo ? a.map.lo < b.map.lo : a.u_lo < b.u_lo;
    });
    double value = 0.0, compensation = 0.0, error = 0.0;
    for (const auto& p : all) {
      const double t = value + p.value;
      compensation += std::abs(value) >= std::abs(p.value) ? (value - t) + p.value
                                                           : (p.value - t) + value;
      value = t;
      error += p.rule_error + p.carried_error;
    }
    return std::pair{value + compensation, error};
  };

  double running_error = 0.0;
  {
    auto copy = queue;
    while (!copy.empty()) {
      running_error += copy.top().rule_error + copy.top().carried_error;
      copy.pop();
    }
  }

  while (true) {
    if (running_error <= tol || queue.empty()) {
      auto [value, error] = totals();
      if (error <= tol) return {value, error, evaluations, Method::adaptive, std::nullopt};
      if (queue.empty())
        throw NonConvergenceError("adaptive quadrature: tolerance " + std::to_string(tol) +
                                  " unreachable (error " + std::to_string(error) + ")");
      running_error = error;
      if (running_error <= tol) continue;
    }
    if (evaluations >= cap)
      throw NonConvergenceError("adaptive quadrature: evaluation cap reached");

    Panel worst = queue.top();
    queue.pop();
    if (!worst.refinable) {
      finished.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.u_lo + worst.u_hi);
    Panel left{worst.map, worst.u_lo, mid};
    Panel right{worst.map, mid, worst.u_hi};
    apply_rule(left, f, evaluations);
    apply_rule(right, f, evaluations);
    running_error += left.rule_error + left.carried_error + right.rule_error +
                     right.carried_error - worst.rule_error - worst.carried_error;
    queue.push(left);
    queue.push(right);
  }
}

}  // namespace detail

/// Adaptive integral of a one-dimensional integrand over [lo, hi] to absolute
/// tolerance tol.  Throws NonConvergenceError when the tolerance cannot be
/// met within 1e7 evaluations.
inline QuadratureResult integrate_1d(const Integrand& f, double lo, double hi, double tol) {
  if (f.dim != 1) throw std::invalid_argument("integrate_1d: integrand must be 1-dimensional");
  if (!(lo < hi)) throw std::invalid_argument("integrate_1d: require lo < hi");
  if (!(tol >= 1e-13)) throw std::invalid_argument("integrate_1d: tol must be >= 1e-13");
  std::int64_t evaluations = 0;
  double x[1];
  auto g = [&](double t) {
    x[0] = t;
    return detail::Estimate{f.eval(std::span<const double>(x, 1)), 0.0};
  };
  return detail::adaptive(g, lo, hi, f.axis_breakpoints(0), f.axis_singular_ends(0), tol,
                          evaluations, kAdaptiveEvaluationCap);
}

/// Convenience overload for a plain function of one variable.
inline QuadratureResult integrate_1d(std::function<double(double)> f, double lo, double hi,
                                     double tol, std::vector<double> breakpoints = {},
                                     SingularEnds ends = {}) {
  return integrate_1d(Integrand::one_dimensional(std::move(f), std::move(breakpoints), ends), lo,
                      hi, tol);
}

/// Iterated adaptive quadrature over a 2- or 3-dimensional box.  Inner
/// integrals run at a tolerance scaled so their summed error stays below a
/// quarter of tol; reported error is outer rule error plus the propagated
/// inner estimates.
inline QuadratureResult integrate_tensor(const Integrand& f, const Box& box, double tol) {
  if (f.dim != 2 && f.dim != 3)
    throw std::invalid_argument("integrate_tensor: dimension must be 2 or 3");
  if (box.size() != static_cast<std::size_t>(f.dim))
    throw std::invalid_argument("integrate_tensor: box dimension mismatch");
  const double min_tol = f.dim == 2 ? 1e-10 : 1e-7;
  if (!(tol >= min_tol))
    throw std::invalid_argument("integrate_tensor: tol below the supported floor");
  for (const auto& iv : box)
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("integrate_tensor: empty box");

  std::int64_t evaluations = 0;
  std::array<double, 3> point{};

  // Integrates axes [axis, dim) with the leading coordinates fixed in `point`.
  std::function<QuadratureResult(int, double)> integrate_axis = [&](int axis, double axis_tol) {
    const Interval iv = box[axis];
    if (axis + 1 == f.dim) {
      auto g = [&](double t) {
        point[axis] = t;
        return detail::Estimate{f.eval(std::span<const double>(point.data(), f.dim)), 0.0};
      };
      return detail::adaptive(g, iv.lo, iv.hi, f.axis_breakpoints(axis),
                              f.axis_singular_ends(axis), axis_tol, evaluations,
                              kTensorEvaluationCap);
    }
    const double inner_tol = std::max(axis_tol / (4.0 * iv.width()), 1e-13);
    auto g = [&](double t) {
      point[axis] = t;
      const QuadratureResult inner = integrate_axis(axis + 1, inner_tol);
      return detail::Estimate{inner.value, inner.error_estimate};
    };
    return detail::adaptive(g, iv.lo, iv.hi, f.axis_breakpoints(axis), f.axis_singular_ends(axis),
                            axis_tol, evaluations, kTensorEvaluationCap);
  };

  QuadratureResult r = integrate_axis(0, tol);
  r.evaluations = evaluations;
  r.method = Method::tensor;
  return r;
}

struct QmcOptions {
  std::int64_t samples = 1 << 20;  // points per randomization, a power of two
  std::uint64_t seed = 1;
  int randomizations = kDefaultRandomizations;
  unsigned threads = 0;  // 0 = default_thread_count()
};

namespace detail {

inline bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

// Box-scaled mean of f over the first n Sobol points (including the origin)
// XOR-shifted by `shift`; each point sits at the centre of its 2^-32 cell.
inline double shifted_sobol_mean(const Integrand& f, const Box& box, std::int64_t n,
                                 const std::vector<std::uint32_t>& shift) {
  const int dim = f.dim;
  boost::random::sobol_engine<std::uint32_t, 32> sobol(static_cast<std::size_t>(dim));
  std::vector<std::uint32_t> raw(dim, 0);
  std::vector<double> x(dim);
  constexpr double scale = 1.0 / 4294967296.0;
  double sum = 0.0, compensation = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (i > 0)
      for (int d = 0; d < dim; ++d) raw[d] = sobol();
    for (int d = 0; d < dim; ++d) {
      const double u = ((raw[d] ^ shift[d]) + 0.5) * scale;
      x[d] = box[d].lo + box[d].width() * u;
    }
    const double v = f.eval(x);
    if (std::isnan(v)) throw EvaluationError("integrand returned NaN");
    const double t = sum + v;
    compensation += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double volume = 1.0;
  for (const auto& iv : box) volume *= iv.width();
  return volume * (sum + compensation) / static_cast<double>(n);
}

}  // namespace detail

/// Randomized quasi-Monte Carlo: `randomizations` independent digital shifts
/// of a Sobol point set; value is their mean and error_estimate the standard
/// error of that mean.  Shifts derive from seed alone and replications are
/// reduced in index order, so results are bit-identical for any thread count.
inline QuadratureResult integrate_qmc(const Integrand& f, const Box& box, const QmcOptions& opt) {
  if (f.dim < 1 || f.dim > kMaxQmcDimension)
    throw std::invalid_argument("integrate_qmc: dimension must be in [1, 12]");
  if (box.size() != static_cast<std::size_t>(f.dim))
    throw std::invalid_argument("integrate_qmc: box dimension mismatch");
  if (!detail::is_power_of_two(opt.samples) || opt.samples < 1024)
    throw std::invalid_argument("integrate_qmc: samples must be a power of two >= 1024");
  if (opt.randomizations < 2)
    throw std::invalid_argument("integrate_qmc: at least two randomizations are required");

  const int replications = opt.randomizations;
  std::mt19937_64 rng(opt.seed);
  std::vector<std::vector<std::uint32_t>> shifts(replications, std::vector<std::uint32_t>(f.dim));
  for (auto& s : shifts)
    for (auto& word : s) word = static_cast<std::uint32_t>(rng() >> 32);

  std::vector<double> means(replications);
  const unsigned workers =
      std::min<unsigned>(opt.threads ? opt.threads : default_thread_count(), replications);
  if (workers <= 1) {
    for (int r = 0; r < replications; ++r)
      means[r] = detail::shifted_sobol_mean(f, box, opt.samples, shifts[r]);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int r = static_cast<int>(w); r < replications; r += static_cast<int>(workers))
            means[r] = detail::shifted_sobol_mean(f, box, opt.samples, shifts[r]);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : failures)
      if (e) std::rethrow_exception(e);
  }

  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= replications;
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  const double std_error = std::sqrt(ss / (replications - 1) / replications);

  QuadratureResult out;
  out.value = mean;
  out.error_estimate = std_error;
  out.evaluations = opt.samples * replications;
  out.method = Method::qmc;
  out.seed = opt.seed;
  return out;
}

}  // namespace catalankit
