#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmasa/hecke.hpp"
#include "qmasa/linalg.hpp"
#include "qmasa/rational.hpp"

namespace qmasa {

// All floats are printed with "%.12g" so identical runs emit identical bytes.
inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<int>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

// One verification verdict.  Exact checks carry the residual as a rational
// string and pass iff it is "0"; float checks pass within their declared
// tolerance; "anomaly" flags a reported discrepancy that is not a failure.
struct VerdictRecord {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  std::string status;    // pass | fail | anomaly
  std::string residual;
  long runtime_ms = -1;  // emitted only when timing is requested

  bool failed() const { return status == "fail"; }

  static VerdictRecord exact(std::string check,
                             std::vector<std::pair<std::string, std::string>> params,
                             const Rational& residual) {
    VerdictRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = (residual == 0) ? "pass" : "fail";
    r.residual = rat_str(residual);
    return r;
  }

  static VerdictRecord boolean(std::string check,
                               std::vector<std::pair<std::string, std::string>> params,
                               bool ok) {
    VerdictRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = ok ? "pass" : "fail";
    r.residual = ok ? "0" : "1";
    return r;
  }

  static VerdictRecord tolerance(std::string check,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 double residual, double tol) {
    VerdictRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = (residual <= tol) ? "pass" : "fail";
    r.residual = fmt_double(residual);
    return r;
  }

  // Like tolerance(), but an excess is reported as an anomaly, not a failure.
  static VerdictRecord flagged(std::string check,
                               std::vector<std::pair<std::string, std::string>> params,
                               double residual, double tol) {
    VerdictRecord r;
    r.check = std::move(check);
    r.params = std::move(params);
    r.status = (residual <= tol) ? "pass" : "anomaly";
    r.residual = fmt_double(residual);
    return r;
  }
};

inline std::string verdict_json(const VerdictRecord& r, bool with_timing = false) {
  std::ostringstream os;
  os << "{\"check\":\"" << json_escape(r.check) << "\",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : r.params) {
    if (!first) os << ",";
    first = false;
    os << "\"" << json_escape(k) << "\":\"" << json_escape(v) << "\"";
  }
  os << "},\"status\":\"" << r.status << "\",\"residual\":\""
     << json_escape(r.residual) << "\"";
  if (with_timing && r.runtime_ms >= 0) os << ",\"runtime_ms\":" << r.runtime_ms;
  os << "}";
  return os.str();
}

inline std::string verdict_csv_header(bool with_timing = false) {
  std::string s = "check,params,status,residual";
  if (with_timing) s += ",runtime_ms";
  return s;
}

inline std::string verdict_csv(const VerdictRecord& r, bool with_timing = false) {
  std::string params;
  for (const auto& [k, v] : r.params) {
    if (!params.empty()) params += ";";
    params += k + "=" + v;
  }
  std::string s = csv_escape(r.check) + "," + csv_escape(params) + "," +
                  r.status + "," + csv_escape(r.residual);
  if (with_timing) s += "," + std::to_string(r.runtime_ms >= 0 ? r.runtime_ms : 0);
  return s;
}

// Deformed group-algebra element as a JSON array of {word, coefficient}
// entries; the coefficient is a degree -> rational map of the parameter
// polynomial.  Ordering follows the element's internal word order.
inline std::string hecke_json(const HeckeElement& a) {
  std::ostringstream os;
  os << "[";
  bool first_term = true;
  for (const auto& [w, poly] : a.terms()) {
    if (!first_term) os << ",";
    first_term = false;
    os << "{\"word\":\"" << word_str(w) << "\",\"coeff\":{";
    bool first_coeff = true;
    for (const auto& [deg, c] : poly.coefficients()) {
      if (!first_coeff) os << ",";
      first_coeff = false;
      os << "\"" << deg << "\":\"" << rat_str(c) << "\"";
    }
    os << "}}";
  }
  os << "]";
  return os.str();
}

// Dense row-major CSV with entries as canonical rational strings.
inline std::string matrix_csv(const RatMatrix& m) {
  std::ostringstream os;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ",";
      os << rat_str(row[j]);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace qmasa
