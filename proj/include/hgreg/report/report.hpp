#pragma once

// Rational recognition and the structured verification records printed by
// the command-line tool.

#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgreg/numerics/real.hpp"

namespace hgreg {

struct RecognizedRational {
  Real input;
  std::optional<Rational> value;
  Real residual = -1;  // |input - p/q| of the accepted fraction, -1 if none

  bool recognized() const { return value.has_value(); }
  std::string str() const { return value ? value->str() : std::string("unrecognized"); }
};

// Continued-fraction convergents p/q of x with q <= q_max; the first one within
// the threshold (default 10^(-P/2)) is accepted. Nothing is forced: an input
// with no such convergent is reported as unrecognized.
inline RecognizedRational recognize_rational(const Real& x, long q_max = 64, std::optional<Real> threshold = {}) {
  RecognizedRational out;
  out.input = x;
  const Real thr = threshold ? *threshold : pow10(-static_cast<int>(working_digits()) / 2);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents p_{k-2}/q_{k-2}, p_{k-1}/q_{k-1}
  Real rest = x;
  for (int k = 0; k < 64; ++k) {
    Real fl = boost::multiprecision::floor(rest);
    BigInt a = fl.convert_to<BigInt>();
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > q_max) break;
    Rational cand(p2, q2);
    Real res = abs(x - real_from_rational(cand));
    if (res <= thr) {
      out.value = cand;
      out.residual = res;
      return out;
    }
    Real frac = rest - fl;
    if (frac == 0) break;
    rest = 1 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

inline constexpr const char* report_schema = "hgreg-report-v1";

struct VerificationReport {
  std::string name;   // identity checked
  std::string locus;  // which table row or identity instance
  std::string lhs, rhs;
  Real residual = 0;
  Real tolerance = 0;
  std::string ratio;  // recognized ratio, if the check involves one
  bool pass = false;
  double runtime_s = 0;
  unsigned precision = 0;
  std::string note;

  nlohmann::json to_json() const {
    return {{"name", name},
            {"locus", locus},
            {"lhs", lhs},
            {"rhs", rhs},
            {"residual", to_string(residual, 6)},
            {"tolerance", to_string(tolerance, 3)},
            {"ratio", ratio},
            {"pass", pass},
            {"runtime_s", runtime_s},
            {"precision", precision},
            {"note", note}};
  }
};

// Runs `body`, which fills in the values and the verdict, with the clock and
// the precision recorded. An exception fails the check and lands in the note.
template <class Body>
VerificationReport timed_report(const std::string& name, const std::string& locus, Body&& body) {
  VerificationReport r;
  r.name = name;
  r.locus = locus;
  r.precision = working_digits();
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.note = e.what();
  }
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

enum class ReportFormat { md, csv, json };

inline ReportFormat parse_report_format(const std::string& s) {
  if (s == "md") return ReportFormat::md;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw Error(ErrorCode::invalid_argument, "format must be md, csv or json");
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string md_field(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

}  // namespace detail

inline std::string render(const std::vector<VerificationReport>& reports, ReportFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case ReportFormat::json: {
      nlohmann::json j{{"schema", report_schema}, {"reports", nlohmann::json::array()}};
      for (const auto& r : reports) j["reports"].push_back(r.to_json());
      os << j.dump(2) << "\n";
      break;
    }
    case ReportFormat::csv:
      os << "name,locus,lhs,rhs,residual,tolerance,ratio,pass,runtime_s,precision,note\n";
      for (const auto& r : reports)
        os << detail::csv_field(r.name) << "," << detail::csv_field(r.locus) << "," << detail::csv_field(r.lhs) << ","
           << detail::csv_field(r.rhs) << "," << to_string(r.residual, 6) << "," << to_string(r.tolerance, 3) << ","
           << detail::csv_field(r.ratio) << "," << (r.pass ? "pass" : "FAIL") << "," << r.runtime_s << ","
           << r.precision << "," << detail::csv_field(r.note) << "\n";
      break;
    case ReportFormat::md:
      os << "| check | locus | lhs | rhs | residual | tol | ratio | result | time (s) |\n"
         << "|---|---|---|---|---|---|---|---|---|\n";
      for (const auto& r : reports) {
        os << "| " << detail::md_field(r.name) << " | " << detail::md_field(r.locus) << " | " << detail::md_field(r.lhs)
           << " | " << detail::md_field(r.rhs) << " | " << to_string(r.residual, 3) << " | "
           << to_string(r.tolerance, 2) << " | " << detail::md_field(r.ratio) << " | " << (r.pass ? "pass" : "FAIL")
           << " | " << std::fixed << std::setprecision(2) << r.runtime_s << std::defaultfloat << " |\n";
        if (!r.note.empty() && !r.pass) os << "\n> " << r.name << ": " << r.note << "\n\n";
      }
      break;
  }
  return os.str();
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return !reports.empty();
}

}  // namespace hgreg
