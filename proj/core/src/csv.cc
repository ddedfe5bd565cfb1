// Copyright 2026 The Authors.
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

#include "wsub/csv.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "wsub/errors.h"

namespace wsub {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string FormatDouble(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double ParseDouble(const std::string& field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first != last && *first == ' ') ++first;
  while (last != first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw InputError("not a number: '" + field + "'");
  }
  return value;
}

CsvTable ReadCsv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitLine(line);
    if (first && has_header) {
      table.header = std::move(fields);
    } else {
      table.rows.push_back(std::move(fields));
    }
    first = false;
  }
  const std::size_t width =
      has_header ? table.header.size()
                 : (table.rows.empty() ? 0 : table.rows.front().size());
  for (const auto& row : table.rows) {
    if (row.size() != width) {
      throw InputError(path.string() + ": ragged CSV row");
    }
  }
  return table;
}

void WriteCsv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  if (!table.header.empty()) write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
  if (!out) throw IoError("failed writing " + path.string());
}

Eigen::MatrixXd ReadMatrixCsv(const std::filesystem::path& path,
                              bool has_header,
                              std::vector<std::string>* header) {
  CsvTable table = ReadCsv(path, has_header);
  const auto cols = static_cast<Eigen::Index>(
      has_header ? table.header.size()
                 : (table.rows.empty() ? 0 : table.rows.front().size()));
  Eigen::MatrixXd m(static_cast<Eigen::Index>(table.rows.size()), cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = ParseDouble(table.rows[i][j]);
    }
  }
  if (header != nullptr) *header = std::move(table.header);
  return m;
}

void WriteMatrixCsv(const std::filesystem::path& path,
                    const Eigen::MatrixXd& matrix,
                    const std::vector<std::string>& header) {
  CsvTable table;
  table.header = header;
  table.rows.resize(static_cast<std::size_t>(matrix.rows()));
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    auto& row = table.rows[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      row.push_back(FormatDouble(matrix(i, j)));
    }
  }
  WriteCsv(path, table);
}

}  // namespace wsub
