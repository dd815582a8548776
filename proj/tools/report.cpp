// SPDX-License-Identifier: MIT
/**
 * @file report.cpp
 * @brief JSON and CSV rendering of command reports.
 */
#include "report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "tamagawa/errors.hpp"

namespace tamagawa::cli {

void Report::add_row(Row row) {
  if (columns.empty())
    for (auto& [k, v] : row.cells) columns.push_back(k);
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + name + "' (use json or csv)");
}

namespace {

nlohmann::ordered_json to_json(const Value& v) {
  if (auto s = std::get_if<std::string>(&v)) return *s;
  if (auto i = std::get_if<int64_t>(&v)) return *i;
  return std::get<bool>(v);
}

std::string to_text(const Value& v) {
  if (auto s = std::get_if<std::string>(&v)) return *s;
  if (auto i = std::get_if<int64_t>(&v)) return std::to_string(*i);
  return std::get<bool>(v) ? "true" : "false";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

void render_csv_header(const std::vector<std::string>& columns, std::ostream& out) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_escape(columns[i]);
  out << "\n";
}

void render_csv_row(const std::vector<std::string>& columns, const Row& row, std::ostream& out) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    std::string cell;
    for (auto& [k, v] : row.cells)
      if (k == columns[i]) cell = to_text(v);
    out << (i ? "," : "") << csv_escape(cell);
  }
  out << "\n";
}

void render(const Report& report, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    render_csv_header(report.columns, out);
    for (const Row& r : report.rows) render_csv_row(report.columns, r, out);
    return;
  }
  nlohmann::ordered_json j;
  j["command"] = report.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (auto& [k, v] : report.parameters) params[k] = to_json(v);
  j["parameters"] = params;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const Row& r : report.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (auto& [k, v] : r.cells) o[k] = to_json(v);
    rows.push_back(o);
  }
  j["results"] = rows;
  std::ostringstream t;
  t << std::fixed << std::setprecision(3) << report.seconds;
  j["timing_seconds"] = t.str();
  out << j.dump(2) << "\n";
}

std::string decimal(const Rational& x, int digits) { return to_decimal(x, digits); }
std::string lo_text(const Interval& x, int digits) { return x.lo_string(digits); }
std::string hi_text(const Interval& x, int digits) { return x.hi_string(digits); }

}  // namespace tamagawa::cli
