#pragma once

// Verification reports: JSON (lossless), CSV and Markdown renderings.

#include "catalankit/constants.hpp"
#include "catalankit/representations.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace catalankit {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportRow {
  std::string case_name;
  std::string method;  // "adaptive" | "tensor" | "qmc" | "error"
  double value = 0.0;
  std::string expected;
  double abs_error = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  std::optional<std::uint64_t> seed;
  bool pass = false;
  std::string message;  // engine failure, empty otherwise

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportSummary {
  int total = 0;
  int passed = 0;
  int failed = 0;

  friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string reference_G;
  std::optional<std::string> timestamp;
  EngineParams engine;
  std::vector<ReportRow> cases;
  ReportSummary summary;

  static ReportDocument from_outcomes(const std::vector<CaseOutcome>& outcomes,
                                      const EngineParams& engine) {
    ReportDocument doc;
    doc.reference_G = to_decimal_string(catalan_reference(), 30);
    doc.engine = engine;
    for (const auto& o : outcomes) {
      ReportRow row;
      row.case_name = o.name;
      row.expected = o.expected;
      row.pass = o.passed;
      row.message = o.message;
      if (o.result) {
        row.method = to_string(o.result->method);
        row.value = o.result->value;
        row.abs_error = o.abs_error;
        row.error_estimate = o.result->error_estimate;
        row.evaluations = o.result->evaluations;
        row.seed = o.result->seed;
      } else {
        row.method = "error";
        row.value = row.abs_error = row.error_estimate = std::numeric_limits<double>::quiet_NaN();
      }
      doc.cases.push_back(std::move(row));
    }
    doc.summary = tally(doc.cases);
    return doc;
  }

  static ReportSummary tally(const std::vector<ReportRow>& rows) {
    ReportSummary s;
    s.total = static_cast<int>(rows.size());
    for (const auto& r : rows) (r.pass ? s.passed : s.failed)++;
    return s;
  }
};

namespace detail {

// NaN and infinities have no JSON spelling; they travel as null.
inline nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline double number_or_nan(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline nlohmann::json to_json(const ReportRow& r) {
  nlohmann::json j = {{"case", r.case_name},
                      {"method", r.method},
                      {"value", detail::finite_or_null(r.value)},
                      {"expected", r.expected},
                      {"abs_error", detail::finite_or_null(r.abs_error)},
                      {"error_estimate", detail::finite_or_null(r.error_estimate)},
                      {"evaluations", r.evaluations},
                      {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)},
                      {"pass", r.pass}};
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

inline ReportRow report_row_from_json(const nlohmann::json& j) {
  ReportRow r;
  r.case_name = j.at("case").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.value = detail::number_or_nan(j.at("value"));
  r.expected = j.at("expected").get<std::string>();
  r.abs_error = detail::number_or_nan(j.at("abs_error"));
  r.error_estimate = detail::number_or_nan(j.at("error_estimate"));
  r.evaluations = j.at("evaluations").get<std::int64_t>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.pass = j.at("pass").get<bool>();
  r.message = j.value("message", "");
  return r;
}

inline nlohmann::json to_json(const EngineParams& e) {
  return {{"tol_1d", e.tol_1d},
          {"tol_2d", e.tol_2d},
          {"tol_3d", e.tol_3d},
          {"samples", e.samples_override ? *e.samples_override : e.qmc.samples},
          {"samples_overridden", e.samples_override.has_value()},
          {"randomizations", e.qmc.randomizations},
          {"seed", e.qmc.seed}};
}

inline EngineParams engine_params_from_json(const nlohmann::json& j) {
  EngineParams e;
  e.tol_1d = j.at("tol_1d").get<double>();
  e.tol_2d = j.at("tol_2d").get<double>();
  e.tol_3d = j.at("tol_3d").get<double>();
  const auto samples = j.at("samples").get<std::int64_t>();
  if (j.at("samples_overridden").get<bool>())
    e.samples_override = samples;
  else
    e.qmc.samples = samples;
  e.qmc.randomizations = j.at("randomizations").get<int>();
  e.qmc.seed = j.at("seed").get<std::uint64_t>();
  return e;
}

inline nlohmann::json to_json(const ReportDocument& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : d.cases) rows.push_back(to_json(r));
  nlohmann::json j = {{"tool_version", d.tool_version},
                      {"reference_G", d.reference_G},
                      {"engine", to_json(d.engine)},
                      {"cases", rows},
                      {"summary",
                       {{"total", d.summary.total},
                        {"passed", d.summary.passed},
                        {"failed", d.summary.failed}}}};
  if (d.timestamp) j["timestamp"] = *d.timestamp;
  return j;
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
  ReportDocument d;
  d.tool_version = j.at("tool_version").get<std::string>();
  d.reference_G = j.at("reference_G").get<std::string>();
  if (j.contains("timestamp")) d.timestamp = j.at("timestamp").get<std::string>();
  d.engine = engine_params_from_json(j.at("engine"));
  for (const auto& r : j.at("cases")) d.cases.push_back(report_row_from_json(r));
  const auto& s = j.at("summary");
  d.summary = {s.at("total").get<int>(), s.at("passed").get<int>(), s.at("failed").get<int>()};
  return d;
}

inline std::string render_csv(const ReportDocument& d) {
  std::ostringstream out;
  out << "case,method,value,expected,abs_error,error_estimate,evaluations,seed,pass\n";
  for (const auto& r : d.cases) {
    out << r.case_name << ',' << r.method << ',' << detail::g17(r.value) << ',' << r.expected
        << ',' << detail::g17(r.abs_error) << ',' << detail::g17(r.error_estimate) << ','
        << r.evaluations << ',' << (r.seed ? std::to_string(*r.seed) : "") << ','
        << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

inline std::string render_markdown(const ReportDocument& d) {
  std::ostringstream out;
  out << "# catalankit verification report\n\n";
  out << "- tool version: " << d.tool_version << "\n";
  out << "- reference G: " << d.reference_G << "\n";
  if (d.timestamp) out << "- timestamp: " << *d.timestamp << "\n";
  const auto e = to_json(d.engine);
  out << "- engine: tol_1d=" << d.engine.tol_1d
      << " tol_2d=" << d.engine.tol_2d << " tol_3d=" << d.engine.tol_3d
      << " samples=" << e["samples"].get<std::int64_t>()
      << " randomizations=" << d.engine.qmc.randomizations << " seed=" << d.engine.qmc.seed
      << "\n\n";
  out << "| case | method | value | expected | abs_error | error_estimate | evaluations | seed | "
         "pass |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : d.cases) {
    out << "| " << r.case_name << " | " << r.method << " | " << detail::g17(r.value) << " | "
        << r.expected << " | " << detail::g17(r.abs_error) << " | "
        << detail::g17(r.error_estimate) << " | " << r.evaluations << " | "
        << (r.seed ? std::to_string(*r.seed) : "") << " | " << (r.pass ? "yes" : "**no**")
        << " |\n";
  }
  out << "\npassed " << d.summary.passed << "/" << d.summary.total << "\n";
  return out.str();
}

}  // namespace catalankit
