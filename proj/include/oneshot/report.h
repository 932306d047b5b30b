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

// Tabular and record output shared by the command-line tool.

#ifndef ONESHOT_REPORT_H_
#define ONESHOT_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

namespace oneshot {

struct BoundRecord {
  std::string quantity;
  double value = 0.0;
  std::string method;
  double tolerance = 0.0;
};

class BoundReport {
 public:
  explicit BoundReport(std::string name) : name_(std::move(name)) {}

  void Add(std::string quantity, double value, std::string method,
           double tolerance = 0.0);

  const std::string& name() const { return name_; }
  const std::vector<BoundRecord>& records() const { return records_; }

  // Throws std::out_of_range if absent.
  double Value(const std::string& quantity) const;

  // {"name": ..., "records": [{"quantity", "value", "method",
  // "tolerance"}]}; non-finite values are written as strings.
  std::string ToJson() const;
  // quantity,value,method,tolerance
  std::string ToCsv() const;

 private:
  std::string name_;
  std::vector<BoundRecord> records_;
};

// 12 significant digits; inf, -inf and nan spelled out.
std::string FormatNumber(double value);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  // Requires one cell per header column.
  void AddRow(const std::vector<double>& row);
  void Write(std::ostream& out) const;
  std::string ToString() const;
  // {"columns": [...], "rows": [[...], ...]}
  std::string ToJson() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace oneshot

#endif  // ONESHOT_REPORT_H_
