#pragma once

// Census ingestion and report emission (text, CSV, JSON) with parsers for
// the two machine formats.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tvgenus/genus.hpp"

namespace tvgenus {

inline constexpr const char* kToolName = "tvgenus";
inline constexpr const char* kToolVersion = "1.0.0";

/// Reads `name ; isosig` lines. The isosig follows the last ';' so names may
/// contain semicolons. Blank lines and '#' comments are skipped; malformed
/// lines come back as entries carrying an error.
inline std::vector<ScreenEntry> parse_census(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  std::vector<ScreenEntry> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    ScreenEntry e;
    const auto semi = line.rfind(';');
    if (semi == std::string_view::npos) {
      e.name = std::string(line);
      e.error = "line " + std::to_string(line_no) + ": expected 'name ; isosig'";
    } else {
      e.name = std::string(trim(line.substr(0, semi)));
      e.isosig = std::string(trim(line.substr(semi + 1)));
      if (e.isosig.empty()) e.error = "line " + std::to_string(line_no) + ": empty isomorphism signature";
    }
    out.push_back(std::move(e));
  }
  return out;
}

struct Provenance {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  int r = 0;
  std::string mode;
  std::optional<double> threshold;
  bool operator==(const Provenance&) const = default;
};

struct Summary {
  std::size_t total = 0;
  std::size_t flagged = 0;     ///< flagged and not excluded as below actionable genus
  std::size_t excluded = 0;    ///< annotated as below actionable genus
  std::size_t failed = 0;
  bool operator==(const Summary&) const = default;
};

struct Report {
  Provenance provenance;
  std::vector<ScreenRecord> records;

  Summary summary() const {
    Summary s;
    s.total = records.size();
    for (const auto& r : records) {
      if (r.failed()) ++s.failed;
      if (actionable(r)) ++s.flagged;
      if (r.genus_lb && *r.genus_lb <= 2) ++s.excluded;
    }
    return s;
  }
};

/// Shortest decimal that reads back to the same double.
inline std::string format_round_trip(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Twelve significant digits, for human-readable output.
inline std::string format_decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double parse_double(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

// ---- CSV ----

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"name", "isosig",  "r",        "tv_float", "tv_exact",
                                             "genus_lb", "h1", "min_gens", "flagged",  "notes"};
  return cols;
}

inline constexpr std::string_view kNoteSeparator = " | ";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos && (s.empty() || (s.front() != ' ' && s.back() != ' ')))
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string to_csv(const std::vector<ScreenRecord>& records) {
  std::string out;
  for (std::size_t i = 0; i < csv_columns().size(); ++i) out += (i ? "," : "") + csv_columns()[i];
  out += "\r\n";
  for (const auto& rec : records) {
    std::string notes;
    for (std::size_t i = 0; i < rec.notes.size(); ++i) notes += (i ? std::string(kNoteSeparator) : "") + rec.notes[i];
    const std::vector<std::string> fields{
        rec.name,
        rec.isosig,
        std::to_string(rec.r),
        rec.tv_float ? format_round_trip(*rec.tv_float) : "",
        rec.tv_exact.value_or(""),
        rec.genus_lb ? std::to_string(*rec.genus_lb) : "",
        rec.h1 ? rec.h1->to_string() : "",
        rec.h1 ? std::to_string(rec.min_generators()) : "",
        rec.flagged ? "true" : "false",
        notes};
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    out += "\r\n";
  }
  return out;
}

/// Splits RFC 4180 text into rows of fields.
inline std::vector<std::vector<std::string>> parse_csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
      row.clear();
      field.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  if (field_started || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<ScreenRecord> records_from_csv(std::string_view text) {
  const auto rows = parse_csv_rows(text);
  if (rows.empty() || rows[0] != csv_columns()) throw std::invalid_argument("CSV header does not match the report columns");
  std::vector<ScreenRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != csv_columns().size())
      throw std::invalid_argument("CSV row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    ScreenRecord rec;
    rec.name = f[0];
    rec.isosig = f[1];
    rec.r = std::stoi(f[2]);
    if (!f[3].empty()) rec.tv_float = parse_double(f[3]);
    if (!f[4].empty()) rec.tv_exact = f[4];
    if (!f[5].empty()) rec.genus_lb = std::stoi(f[5]);
    if (!f[6].empty()) rec.h1 = H1Summary::parse(f[6]);
    rec.flagged = f[8] == "true";
    for (std::size_t start = 0; !f[9].empty();) {
      const auto sep = f[9].find(kNoteSeparator, start);
      rec.notes.push_back(f[9].substr(start, sep - start));
      if (sep == std::string::npos) break;
      start = sep + kNoteSeparator.size();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// ---- JSON ----

inline nlohmann::json to_json_value(const ScreenRecord& rec) {
  nlohmann::json j;
  j["name"] = rec.name;
  j["isosig"] = rec.isosig;
  j["r"] = rec.r;
  j["tv_float"] = rec.tv_float ? nlohmann::json(*rec.tv_float) : nlohmann::json(nullptr);
  j["tv_exact"] = rec.tv_exact ? nlohmann::json(*rec.tv_exact) : nlohmann::json(nullptr);
  j["genus_lb"] = rec.genus_lb ? nlohmann::json(*rec.genus_lb) : nlohmann::json(nullptr);
  j["h1"] = rec.h1 ? nlohmann::json(rec.h1->to_string()) : nlohmann::json(nullptr);
  j["min_gens"] = rec.h1 ? nlohmann::json(rec.min_generators()) : nlohmann::json(nullptr);
  j["flagged"] = rec.flagged;
  j["notes"] = rec.notes;
  return j;
}

inline std::string to_json(const Report& report) {
  nlohmann::json j;
  j["provenance"] = {{"tool", report.provenance.tool},
                     {"version", report.provenance.version},
                     {"r", report.provenance.r},
                     {"mode", report.provenance.mode},
                     {"threshold", report.provenance.threshold ? nlohmann::json(*report.provenance.threshold)
                                                               : nlohmann::json(nullptr)}};
  const Summary s = report.summary();
  j["summary"] = {{"total", s.total}, {"flagged", s.flagged}, {"excluded", s.excluded}, {"failed", s.failed}};
  j["records"] = nlohmann::json::array();
  for (const auto& rec : report.records) j["records"].push_back(to_json_value(rec));
  return j.dump(2) + "\n";
}

inline Report report_from_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Report rep;
  const auto& p = j.at("provenance");
  rep.provenance.tool = p.at("tool").get<std::string>();
  rep.provenance.version = p.at("version").get<std::string>();
  rep.provenance.r = p.at("r").get<int>();
  rep.provenance.mode = p.at("mode").get<std::string>();
  if (!p.at("threshold").is_null()) rep.provenance.threshold = p.at("threshold").get<double>();
  for (const auto& jr : j.at("records")) {
    ScreenRecord rec;
    rec.name = jr.at("name").get<std::string>();
    rec.isosig = jr.at("isosig").get<std::string>();
    rec.r = jr.at("r").get<int>();
    if (!jr.at("tv_float").is_null()) rec.tv_float = jr.at("tv_float").get<double>();
    if (!jr.at("tv_exact").is_null()) rec.tv_exact = jr.at("tv_exact").get<std::string>();
    if (!jr.at("genus_lb").is_null()) rec.genus_lb = jr.at("genus_lb").get<int>();
    if (!jr.at("h1").is_null()) rec.h1 = H1Summary::parse(jr.at("h1").get<std::string>());
    rec.flagged = jr.at("flagged").get<bool>();
    rec.notes = jr.at("notes").get<std::vector<std::string>>();
    rep.records.push_back(std::move(rec));
  }
  const Summary s = rep.summary();
  const auto& js = j.at("summary");
  if (js.at("total").get<std::size_t>() != s.total || js.at("flagged").get<std::size_t>() != s.flagged ||
      js.at("excluded").get<std::size_t>() != s.excluded || js.at("failed").get<std::size_t>() != s.failed)
    throw std::invalid_argument("JSON summary does not match its records");
  return rep;
}

// ---- text ----

inline std::string to_text(const Report& report) {
  std::string out;
  for (const auto& rec : report.records) {
    out += rec.name;
    if (rec.failed()) {
      out += "  FAILED";
    } else {
      out += "  tv=" + format_decimal(*rec.tv_float) + "  genus>=" + std::to_string(*rec.genus_lb) +
             "  H1=" + rec.h1->to_string() + "  gens=" + std::to_string(rec.min_generators());
      if (rec.flagged) out += "  *";
    }
    for (const auto& n : rec.notes) out += "\n    " + n;
    out += '\n';
  }
  const Summary s = report.summary();
  out += "# r=" + std::to_string(report.provenance.r) + " mode=" + report.provenance.mode;
  if (report.provenance.threshold) out += " threshold=" + format_decimal(*report.provenance.threshold);
  out += "  total=" + std::to_string(s.total) + " flagged=" + std::to_string(s.flagged) +
         " excluded=" + std::to_string(s.excluded) + " failed=" + std::to_string(s.failed) + '\n';
  return out;
}

}  // namespace tvgenus
