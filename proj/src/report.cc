// Copyright 2026 The oneshot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneshot/report.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fmt/format.h"
#include "json.hpp"

namespace oneshot {

void BoundReport::Add(std::string quantity, double value, std::string method,
                      double tolerance) {
  records_.push_back(
      {std::move(quantity), value, std::move(method), tolerance});
}

double BoundReport::Value(const std::string& quantity) const {
  for (const BoundRecord& r : records_) {
    if (r.quantity == quantity) return r.value;
  }
  throw std::out_of_range("no record named " + quantity);
}

namespace {

nlohmann::json NumberJson(double v) {
  if (std::isfinite(v)) return v;
  return FormatNumber(v);
}

// Quotes a field that holds a separator, quote or line break.
std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string BoundReport::ToJson() const {
  nlohmann::json records = nlohmann::json::array();
  for (const BoundRecord& r : records_) {
    records.push_back({{"quantity", r.quantity},
                       {"value", NumberJson(r.value)},
                       {"method", r.method},
                       {"tolerance", NumberJson(r.tolerance)}});
  }
  nlohmann::json doc = {{"name", name_}, {"records", records}};
  return doc.dump(2) + "\n";
}

std::string BoundReport::ToCsv() const {
  std::string out = "quantity,value,method,tolerance\n";
  for (const BoundRecord& r : records_) {
    out += fmt::format("{},{},{},{}\n", CsvField(r.quantity),
                       FormatNumber(r.value), CsvField(r.method),
                       FormatNumber(r.tolerance));
  }
  return out;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", value);
}

CsvTable::CsvTable(std::vector<std::string> header)
    : header_(std::move(header)) {}

void CsvTable::AddRow(const std::vector<double>& row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument(fmt::format("row has {} cells, header has {}",
                                            row.size(), header_.size()));
  }
  rows_.push_back(row);
}

void CsvTable::Write(std::ostream& out) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    out << (i ? "," : "") << CsvField(header_[i]);
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << FormatNumber(row[i]);
    }
    out << '\n';
  }
}

std::string CsvTable::ToString() const {
  std::ostringstream out;
  Write(out);
  return out.str();
}

std::string CsvTable::ToJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json cells = nlohmann::json::array();
    for (double v : row) cells.push_back(NumberJson(v));
    rows.push_back(std::move(cells));
  }
  nlohmann::json doc = {{"columns", header_}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace oneshot
