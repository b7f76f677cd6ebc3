// Copyright 2026 The qjump Authors
//
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

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qjump::cli {

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scientific notation with 12 significant digits.
std::string format_number(double v);

/// Comma-separated numeric table with one '#' header line.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<double> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::vector<double> column(const std::string& name) const;

  void write(std::ostream& os) const;
  /// Writes to `path`, or to `fallback` if path is empty. Throws
  /// OutputError if the file cannot be written.
  void write_to(const std::string& path, std::ostream& fallback) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace qjump::cli
