// SPDX-License-Identifier: MIT
/**
 * @file report.hpp
 * @brief Tabular command output rendered as JSON or CSV with the same columns and values.
 */
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tamagawa/interval.hpp"
#include "tamagawa/rational.hpp"

namespace tamagawa::cli {

/// Integers stay integers; everything else (exact rationals, outward-rounded decimals) is text.
using Value = std::variant<std::string, int64_t, bool>;

struct Row {
  std::vector<std::pair<std::string, Value>> cells;
  Row& add(std::string key, Value v) {
    cells.emplace_back(std::move(key), std::move(v));
    return *this;
  }
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Value>> parameters;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  double seconds = 0;

  void add_row(Row row);
};

enum class Format { Json, Csv };

Format parse_format(const std::string& name);
void render(const Report& report, Format format, std::ostream& out);
/// CSV header line followed by one line per row; no trailing metadata.
void render_csv_header(const std::vector<std::string>& columns, std::ostream& out);
void render_csv_row(const std::vector<std::string>& columns, const Row& row, std::ostream& out);

std::string decimal(const Rational& x, int digits = 12);
std::string lo_text(const Interval& x, int digits = 12);
std::string hi_text(const Interval& x, int digits = 12);

}  // namespace tamagawa::cli
