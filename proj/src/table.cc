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

#include "locsec/table.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "locsec/errors.h"

namespace locsec {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    std::ostringstream msg;
    msg << "Table::add_row: row has " << row.size() << " cells, table has " << columns.size()
        << " columns";
    throw DimensionError(msg.str());
  }
  rows.push_back(std::move(row));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", kCsvSignificantDigits, value);
  return buf;
}

void write_csv(std::ostream& out, const Table& table, const std::string& command,
               const std::string& stamp, LogBase units) {
  out << "# locsec-csv v" << kCsvSchemaVersion << ' ' << command << ' ' << stamp << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << quote(table.columns[c].name);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      const Cell& cell = row[c];
      if (const double* d = std::get_if<double>(&cell)) {
        out << format_number(table.columns[c].information ? from_nats(*d, units) : *d);
      } else if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
        out << *i;
      } else {
        out << quote(std::get<std::string>(cell));
      }
    }
    out << '\n';
  }
}

}  // namespace locsec
