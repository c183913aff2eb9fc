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

#include "locsec/channel_io.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "locsec/errors.h"

namespace locsec {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "locsec-channel";
constexpr int kVersion = 1;

json matrix_json(const TransitionMatrix& m) {
  json rows = json::array();
  for (std::size_t y = 0; y < m.outputs(); ++y) {
    json row = json::array();
    for (std::size_t x = 0; x < m.inputs(); ++x) row.push_back(m(y, x));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t read_size(const json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw ValidationError(std::string("channel file: missing field '") + key + "'");
  }
  const json& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    throw ValidationError(std::string("channel file: field '") + key +
                          "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double read_probability(const json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError("channel file: " + where + " must be a number");
  return v.get<double>();
}

TransitionMatrix read_matrix(const json& doc, const char* key, std::size_t rows,
                             std::size_t cols) {
  if (!doc.contains(key)) {
    throw ValidationError(std::string("channel file: missing field '") + key + "'");
  }
  const json& m = doc.at(key);
  if (!m.is_array() || m.size() != rows) {
    std::ostringstream msg;
    msg << "channel file: field '" << key << "' must be an array of " << rows << " rows";
    throw ValidationError(msg.str());
  }
  Eigen::MatrixXd entries(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = m.at(r);
    if (!row.is_array() || row.size() != cols) {
      std::ostringstream msg;
      msg << "channel file: " << key << "[" << r << "] must have " << cols << " entries";
      throw ValidationError(msg.str());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      std::ostringstream where;
      where << key << "[" << r << "][" << c << "]";
      entries(r, c) = read_probability(row.at(c), where.str());
    }
  }
  return TransitionMatrix(std::move(entries));
}

std::string line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream out;
  out << "line " << line << ", column " << column;
  return out.str();
}

}  // namespace

std::string channel_to_json(const WiretapChannel& wc) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["nx"] = wc.nx();
  doc["ny"] = wc.ny();
  doc["nz"] = wc.nz();
  json px = json::array();
  for (std::size_t x = 0; x < wc.nx(); ++x) px.push_back(wc.px()[x]);
  doc["px"] = std::move(px);
  doc["bob"] = matrix_json(wc.bob());
  doc["eve"] = matrix_json(wc.eve());
  return doc.dump(2) + "\n";
}

WiretapChannel channel_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("channel file: malformed JSON at " + line_and_column(text, e.byte) +
                          ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("channel file: top level must be an object");
  if (doc.contains("format") && doc.at("format") != kFormat) {
    throw ValidationError("channel file: unexpected format tag");
  }
  if (doc.contains("version") && doc.at("version") != kVersion) {
    throw ValidationError("channel file: unsupported version");
  }
  const std::size_t nx = read_size(doc, "nx");
  const std::size_t ny = read_size(doc, "ny");
  const std::size_t nz = read_size(doc, "nz");
  if (!doc.contains("px")) throw ValidationError("channel file: missing field 'px'");
  const json& px = doc.at("px");
  if (!px.is_array() || px.size() != nx) {
    std::ostringstream msg;
    msg << "channel file: field 'px' must be an array of " << nx << " numbers";
    throw ValidationError(msg.str());
  }
  Eigen::VectorXd probs(nx);
  for (std::size_t x = 0; x < nx; ++x) {
    probs(x) = read_probability(px.at(x), "px[" + std::to_string(x) + "]");
  }
  return WiretapChannel(Pmf(std::move(probs)), read_matrix(doc, "bob", ny, nx),
                        read_matrix(doc, "eve", nz, nx));
}

void write_channel_file(const std::string& path, const WiretapChannel& wc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << channel_to_json(wc);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

WiretapChannel read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open channel file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return channel_from_json(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace locsec
