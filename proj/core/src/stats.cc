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

#include "wsub/stats.h"

#include <cmath>
#include <numeric>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>

namespace wsub {

double Mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double SampleStd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = Mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double StandardError(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return SampleStd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

ChiSquareResult ChiSquareTwoSample(const std::map<std::string, std::uint64_t>& a,
                                   const std::map<std::string, std::uint64_t>& b) {
  std::set<std::string> categories;
  double total_a = 0.0;
  double total_b = 0.0;
  for (const auto& [key, count] : a) {
    if (count > 0) categories.insert(key);
    total_a += static_cast<double>(count);
  }
  for (const auto& [key, count] : b) {
    if (count > 0) categories.insert(key);
    total_b += static_cast<double>(count);
  }
  ChiSquareResult result;
  if (categories.size() < 2 || total_a == 0.0 || total_b == 0.0) return result;
  const double total = total_a + total_b;
  auto count_of = [](const std::map<std::string, std::uint64_t>& m,
                     const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? 0.0 : static_cast<double>(it->second);
  };
  for (const std::string& key : categories) {
    const double oa = count_of(a, key);
    const double ob = count_of(b, key);
    const double row = oa + ob;
    const double ea = row * total_a / total;
    const double eb = row * total_b / total;
    result.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  result.degrees_of_freedom = categories.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(result.degrees_of_freedom));
  result.p_value = boost::math::cdf(boost::math::complement(dist, result.statistic));
  return result;
}

}  // namespace wsub
