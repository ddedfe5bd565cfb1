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

#ifndef WSUB_CSV_H_
#define WSUB_CSV_H_

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wsub {

// Shortest decimal that reads back as the same double (17 significant
// digits).
std::string FormatDouble(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Comma-separated, no quoting. Throws InputError on I/O failure or ragged
// rows.
CsvTable ReadCsv(const std::filesystem::path& path, bool has_header);
void WriteCsv(const std::filesystem::path& path, const CsvTable& table);

Eigen::MatrixXd ReadMatrixCsv(const std::filesystem::path& path,
                              bool has_header,
                              std::vector<std::string>* header = nullptr);
void WriteMatrixCsv(const std::filesystem::path& path,
                    const Eigen::MatrixXd& matrix,
                    const std::vector<std::string>& header = {});

double ParseDouble(const std::string& field);

}  // namespace wsub

#endif  // WSUB_CSV_H_
