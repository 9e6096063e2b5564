// catalankit command-line frontend: verify, integrate, lerch.

#include "catalankit/catalankit.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace catalankit;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> tol3d;
  std::optional<std::int64_t> samples;
  std::optional<int> randomizations;
  bool no_timestamp = false;
};

EngineParams engine_from(const GlobalOptions& g) {
  EngineParams e;
  if (g.tol) e.tol_1d = e.tol_2d = *g.tol;
  if (g.tol3d) e.tol_3d = *g.tol3d;
  if (g.seed) e.qmc.seed = *g.seed;
  if (g.randomizations) e.qmc.randomizations = *g.randomizations;
  if (g.samples) {
    e.samples_override = *g.samples;
    e.qmc.samples = *g.samples;
  }
  e.qmc.threads = default_thread_count();
  return e;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int cmd_verify(const GlobalOptions& g, const std::optional<std::string>& filter) {
  const std::string format = g.format.empty() ? "markdown" : g.format;
  if (format != "json" && format != "csv" && format != "markdown")
    throw std::invalid_argument("verify: --format must be json, csv or markdown");
  const EngineParams engine = engine_from(g);
  const auto outcomes = run_registry(filter, engine);
  if (outcomes.empty())
    std::cerr << "warning: no verification case matches filter '" << filter.value_or("") << "'\n";

  ReportDocument doc = ReportDocument::from_outcomes(outcomes, engine);
  if (!g.no_timestamp) doc.timestamp = utc_timestamp();
  if (format == "json")
    std::cout << to_json(doc).dump(2) << '\n';
  else if (format == "csv")
    std::cout << render_csv(doc);
  else
    std::cout << render_markdown(doc);

  for (const auto& row : doc.cases)
    if (!row.pass)
      std::cerr << "FAILED " << row.case_name
                << (row.message.empty() ? "" : ": " + row.message) << '\n';
  return doc.summary.failed == 0 ? kExitPass : kExitFailure;
}

struct IntegrateOptions {
  std::string rep = "single";
  std::vector<std::string> cdfs;
  std::string cdf1;
  std::string cdf2;
  std::vector<double> a;
  int r = 0;
};

int cmd_integrate(const GlobalOptions& g, const IntegrateOptions& o) {
  std::vector<SymmetricCdf> cdfs;
  RepresentationKind kind{};
  int r = 0;
  if (o.rep == "single") {
    kind = RepresentationKind::single;
    r = 1;
  } else if (o.rep == "double") {
    kind = RepresentationKind::double_;
    r = 2;
  } else if (o.rep == "multi") {
    kind = RepresentationKind::multi;
    r = o.r;
    if (r < 1 || r > kMaxRepresentationDimension)
      throw std::invalid_argument("integrate: --r must be in [1, 12] for --rep multi");
  } else {
    throw std::invalid_argument("integrate: --rep must be single, double or multi");
  }
  if (o.rep != "multi" && o.r != 0 && o.r != r)
    throw std::invalid_argument("integrate: --r conflicts with --rep " + o.rep);

  std::vector<std::string> names = o.cdfs;
  if (!o.cdf1.empty() || !o.cdf2.empty()) {
    if (!names.empty()) throw std::invalid_argument("integrate: use either --cdf or --cdf1/--cdf2");
    if (r != 2) throw std::invalid_argument("integrate: --cdf1/--cdf2 need --rep double");
    names = {o.cdf1.empty() ? "rademacher" : o.cdf1, o.cdf2.empty() ? "rademacher" : o.cdf2};
  }
  if (names.empty()) names = {"rademacher"};
  if (names.size() == 1) names.resize(r, names.front());
  if (static_cast<int>(names.size()) != r)
    throw std::invalid_argument("integrate: give one --cdf or exactly r of them");
  for (const auto& n : names) cdfs.push_back(parse_cdf_spec(n));

  std::vector<double> a = o.a;
  if (a.empty()) a.assign(r - 1, 1.0);
  const auto spec = RepresentationSpec::make(kind, cdfs, a);
  const EngineParams engine = engine_from(g);
  const QuadratureResult result = multi_integral(spec, engine);
  const double reference = catalan_constant().to_double();
  const double delta = std::abs(result.value - reference);

  if (g.format == "json") {
    nlohmann::json j = {{"representation", o.rep},
                        {"r", r},
                        {"a", spec.a_params},
                        {"value", result.value},
                        {"error_estimate", result.error_estimate},
                        {"abs_error_vs_G", delta},
                        {"evaluations", result.evaluations},
                        {"method", to_string(result.method)},
                        {"seed", result.seed ? nlohmann::json(*result.seed) : nlohmann::json()}};
    nlohmann::json names_json = nlohmann::json::array();
    for (const auto& c : cdfs) names_json.push_back(c.spec_string());
    j["cdfs"] = names_json;
    std::cout << j.dump(2) << '\n';
  } else if (g.format.empty() || g.format == "text" || g.format == "markdown") {
    std::printf("value:          %.17g\n", result.value);
    std::printf("error_estimate: %.3e\n", result.error_estimate);
    std::printf("|value - G|:    %.3e\n", delta);
    std::printf("evaluations:    %lld\n", static_cast<long long>(result.evaluations));
    std::printf("method:         %s\n", to_string(result.method));
    if (result.seed) std::printf("seed:           %llu\n", static_cast<unsigned long long>(*result.seed));
  } else {
    throw std::invalid_argument("integrate: --format must be text or json");
  }
  return kExitPass;
}

int cmd_lerch(const GlobalOptions& g, int n, const std::string& emit, const std::string& order) {
  if (n < 0 || n > kMaxClosedFormOrder) throw std::invalid_argument("lerch: --n must be in [0, 32]");
  const std::string how = emit.empty() ? (g.format == "json" ? "json" : "latex") : emit;
  const LerchClosedForm form = derive_closed_form(n);
  if (how == "latex") {
    if (order != "ascending" && order != "descending")
      throw std::invalid_argument("lerch: --order must be ascending or descending");
    std::cout << emit_latex(form, order == "ascending" ? TermOrder::ascending
                                                       : TermOrder::descending)
              << '\n';
  } else if (how == "json") {
    std::cout << to_json(form).dump() << '\n';
  } else if (how == "coeffs") {
    std::cout << emit_coeffs(form) << '\n';
  } else {
    throw std::invalid_argument("lerch: --emit must be latex, json or coeffs");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalankit: integral representations of Catalan's constant"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format (verify: json|csv|markdown)");
  app.add_option("--seed", g.seed, "QMC randomization seed");
  app.add_option("--tol", g.tol, "Absolute tolerance for 1D and 2D quadrature");
  app.add_option("--tol3d", g.tol3d, "Absolute tolerance for 3D quadrature");
  app.add_option("--samples", g.samples, "QMC points per randomization (power of two)");
  app.add_option("--randomizations", g.randomizations, "Independent QMC randomizations");
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit the timestamp from reports");

  auto* verify = app.add_subcommand("verify", "Run the registry of verification cases");
  std::optional<std::string> filter;
  verify->add_option("--filter", filter, "Glob over case names");

  auto* integrate = app.add_subcommand("integrate", "Evaluate one representation");
  IntegrateOptions io;
  integrate->add_option("--rep", io.rep, "single | double | multi");
  integrate->add_option("--cdf", io.cdfs, "CDF spec name[:key=value], one or r of them");
  integrate->add_option("--cdf1", io.cdf1, "First CDF of a double integral");
  integrate->add_option("--cdf2", io.cdf2, "Second CDF of a double integral");
  integrate->add_option("--a", io.a, "Leading half-widths a_1..a_{r-1}");
  integrate->add_option("--r", io.r, "Dimension for --rep multi");

  auto* lerch = app.add_subcommand("lerch", "Derive Phi(-z, -n, 1/2) in closed form");
  int n = -1;
  std::string emit;
  std::string order = "ascending";
  std::string action;
  lerch->add_option("action", action, "Optional action: derive")->check(CLI::IsMember({"derive"}));
  lerch->add_option("--n", n, "Order n (0..32)")->required();
  lerch->add_option("--emit", emit, "latex | json | coeffs");
  lerch->add_option("--order", order, "LaTeX term order: ascending | descending");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(g, filter);
    if (*integrate) return cmd_integrate(g, io);
    if (*lerch) return cmd_lerch(g, n, emit, order);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
