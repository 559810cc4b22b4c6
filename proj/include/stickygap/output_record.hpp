#pragma once

// Serialisable result of one CLI invocation.
//
// CSV layout (LF line endings, results printed with 12 significant digits,
// query values in shortest round-trip form):
//   section,key,value,provenance
//   command,<command>,,
//   query,<flag>,<value>,
//   result,<name>,<value>,<anchor>
// A curve is written separately as alpha,upper_bound[,exact] or, for the disk
// figure, alpha,exact,upper_bound.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stickygap/error.hpp"
#include "stickygap/interpolation.hpp"

namespace stickygap {

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, double>> query;
  std::vector<std::pair<std::string, double>> results;
  std::map<std::string, std::string> provenance;
  std::optional<BoundCurve> curve;

  void add_query(std::string key, double value) { query.emplace_back(std::move(key), value); }

  void add_result(std::string key, double value, std::string anchor) {
    provenance[key] = std::move(anchor);
    results.emplace_back(std::move(key), value);
  }

  std::optional<double> result(std::string_view key) const {
    for (const auto& [k, v] : results) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Number formatting

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  if (s == "nan") return std::nan("");
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace detail

inline std::string to_csv(const OutputRecord& r) {
  std::string out = "section,key,value,provenance\n";
  out += "command," + detail::csv_field(r.command) + ",,\n";
  for (const auto& [k, v] : r.query) out += "query," + detail::csv_field(k) + "," + format_exact(v) + ",\n";
  for (const auto& [k, v] : r.results) {
    const auto it = r.provenance.find(k);
    const std::string anchor = it == r.provenance.end() ? "" : it->second;
    out += "result," + detail::csv_field(k) + "," + format_number(v) + "," +
           detail::csv_field(anchor) + "\n";
  }
  return out;
}

inline OutputRecord from_csv(const std::string& text) {
  OutputRecord r;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      detail::require(line == "section,key,value,provenance", "unexpected CSV header");
      header = false;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    detail::require(f.size() == 4, "CSV record rows need 4 fields");
    if (f[0] == "command") {
      r.command = f[1];
    } else if (f[0] == "query") {
      r.add_query(f[1], parse_number(f[2]));
    } else if (f[0] == "result") {
      r.add_result(f[1], parse_number(f[2]), f[3]);
    } else {
      throw DomainError("unknown CSV section '" + f[0] + "'");
    }
  }
  return r;
}

enum class CurveLayout { BoundOnly, BoundThenExact, ExactThenBound };

inline std::string curve_to_csv(const BoundCurve& c, CurveLayout layout) {
  std::string out;
  switch (layout) {
    case CurveLayout::BoundOnly:
      out = "alpha,upper_bound\n";
      break;
    case CurveLayout::BoundThenExact:
      out = "alpha,upper_bound,exact\n";
      break;
    case CurveLayout::ExactThenBound:
      out = "alpha,exact,upper_bound\n";
      break;
  }
  for (std::size_t i = 0; i < c.alphas.size(); ++i) {
    out += format_number(c.alphas[i]);
    const std::string bound = format_number(c.upper_bounds[i]);
    const std::string exact = c.exact ? format_number((*c.exact)[i]) : "";
    switch (layout) {
      case CurveLayout::BoundOnly:
        out += "," + bound;
        break;
      case CurveLayout::BoundThenExact:
        out += "," + bound + "," + exact;
        break;
      case CurveLayout::ExactThenBound:
        out += "," + exact + "," + bound;
        break;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON. Non-finite numbers are written as the strings "inf", "-inf", "nan".

namespace detail {

inline nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_exact(v);
}

inline double json_to_number(const nlohmann::ordered_json& j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const OutputRecord& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["query"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.query) j["query"][k] = detail::json_number(v);
  j["results"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.results) j["results"][k] = detail::json_number(v);
  j["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.results) {
    const auto it = r.provenance.find(k);
    j["provenance"][k] = it == r.provenance.end() ? "" : it->second;
  }
  if (r.curve) {
    auto& c = j["curve"];
    c["alpha"] = r.curve->alphas;
    c["upper_bound"] = r.curve->upper_bounds;
    if (r.curve->exact) c["exact"] = *r.curve->exact;
  }
  return j;
}

inline OutputRecord from_json(const nlohmann::ordered_json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("query").items()) r.add_query(k, detail::json_to_number(v));
  const auto& prov = j.at("provenance");
  for (const auto& [k, v] : j.at("results").items()) {
    r.add_result(k, detail::json_to_number(v), prov.value(k, std::string{}));
  }
  if (j.contains("curve")) {
    BoundCurve c;
    c.alphas = j["curve"].at("alpha").get<std::vector<double>>();
    c.upper_bounds = j["curve"].at("upper_bound").get<std::vector<double>>();
    if (j["curve"].contains("exact")) c.exact = j["curve"]["exact"].get<std::vector<double>>();
    r.curve = std::move(c);
  }
  return r;
}

}  // namespace stickygap
