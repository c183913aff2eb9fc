// Copyright 2026 The Locsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// In-memory result tables and their versioned CSV rendering.

#ifndef LOCSEC_TABLE_H_
#define LOCSEC_TABLE_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "locsec/probability.h"

namespace locsec {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr int kCsvSignificantDigits = 12;

using Cell = std::variant<double, std::int64_t, std::string>;

struct Column {
  std::string name;
  // Information-valued columns are stored in nats and converted on output.
  bool information = false;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// Decimal rendering with 12 significant digits; "nan", "inf", "-inf" for
// non-finite values.
std::string format_number(double value);

// First line "# locsec-csv v<schema> <command> <stamp>", then the header and
// one line per row. Fields containing commas or quotes are quoted.
void write_csv(std::ostream& out, const Table& table, const std::string& command,
               const std::string& stamp, LogBase units);

}  // namespace locsec

#endif  // LOCSEC_TABLE_H_
