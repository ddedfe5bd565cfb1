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

#ifndef WSUB_STATS_H_
#define WSUB_STATS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace wsub {

double Mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double SampleStd(std::span<const double> xs);
double StandardError(std::span<const double> xs);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Two-sample chi-square test of homogeneity over categorical outcomes. With
// fewer than two observed categories the samples cannot differ and the
// result is statistic 0, p = 1.
ChiSquareResult ChiSquareTwoSample(const std::map<std::string, std::uint64_t>& a,
                                   const std::map<std::string, std::uint64_t>& b);

}  // namespace wsub

#endif  // WSUB_STATS_H_
