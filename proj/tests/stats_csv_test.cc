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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include <unistd.h>

#include <gtest/gtest.h>

#include "wsub/csv.h"
#include "wsub/errors.h"
#include "wsub/random.h"
#include "wsub/stats.h"

namespace wsub {
namespace {

TEST(StatsTest, MeanStdAndStandardError) {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(Mean(xs), 2.5);
  EXPECT_DOUBLE_EQ(SampleStd(xs), std::sqrt(5.0 / 3.0));
  EXPECT_DOUBLE_EQ(StandardError(xs), std::sqrt(5.0 / 3.0) / 2.0);
  const std::vector<double> one{7.0};
  EXPECT_EQ(SampleStd(one), 0.0);
}

TEST(StatsTest, ChiSquareAgainstHandComputation) {
  // 2x2 table [[10, 20], [30, 40]]: expected [[12, 18], [28, 42]].
  const auto r = ChiSquareTwoSample({{"a", 10}, {"b", 20}}, {{"a", 30}, {"b", 40}});
  const double stat = 4.0 / 12 + 4.0 / 18 + 4.0 / 28 + 4.0 / 42;
  EXPECT_NEAR(r.statistic, stat, 1e-12);
  EXPECT_EQ(r.degrees_of_freedom, 1u);
  // Survival function of chi-square(1) = erfc(sqrt(x / 2)).
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(stat / 2.0)), 1e-12);
}

TEST(StatsTest, ChiSquareDegenerateAndDisjoint) {
  const auto same = ChiSquareTwoSample({{"x", 100}}, {{"x", 50}});
  EXPECT_EQ(same.p_value, 1.0);
  const auto disjoint = ChiSquareTwoSample({{"x", 100}}, {{"y", 100}});
  EXPECT_LT(disjoint.p_value, 1e-10);
}

TEST(StatsTest, ChiSquareSameDistributionRarelyRejects) {
  int rejections = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(DeriveSeed(9, trial));
    std::map<std::string, std::uint64_t> a, b;
    for (int i = 0; i < 1000; ++i) {
      a[std::to_string(UniformIndex(rng, 4))]++;
      b[std::to_string(UniformIndex(rng, 4))]++;
    }
    if (ChiSquareTwoSample(a, b).p_value < 0.01) ++rejections;
  }
  EXPECT_LE(rejections, 8);
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = (UniformUnit(rng) - 0.5) * std::pow(10.0, UniformIndex(rng, 40) - 20.0);
    ASSERT_EQ(ParseDouble(FormatDouble(x)), x);
  }
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(0.1), "0.10000000000000001");
  EXPECT_THROW(ParseDouble("abc"), InputError);
  EXPECT_THROW(ParseDouble("1.5x"), InputError);
}

TEST(CsvTest, TableRoundTripAndRaggedRows) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("wsub_csv_" + std::to_string(::getpid()) + ".csv");
  CsvTable t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
  WriteCsv(path, t);
  const CsvTable back = ReadCsv(path, true);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  Eigen::MatrixXd m(2, 2);
  m << 1.5, -2.25, 1e-300, 3.0;
  WriteMatrixCsv(path, m, {"x", "y"});
  std::vector<std::string> header;
  EXPECT_EQ(ReadMatrixCsv(path, true, &header), m);
  EXPECT_EQ(header, (std::vector<std::string>{"x", "y"}));
  {
    std::ofstream out(path);
    out << "1,2\n3\n";
  }
  EXPECT_THROW(ReadCsv(path, false), InputError);
  std::filesystem::remove(path);
  EXPECT_THROW(ReadCsv(path, false), InputError);
}

TEST(CsvTest, UnwritablePathIsIoError) {
  CsvTable t{{"a"}, {}};
  EXPECT_THROW(WriteCsv("/nonexistent-dir/x/y.csv", t), IoError);
}

TEST(RandomTest, DeriveSeedSeparatesTrials) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < 1000; ++t) seeds.insert(DeriveSeed(42, t));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(DeriveSeed(42, 7), DeriveSeed(42, 7));
  EXPECT_NE(DeriveSeed(42, 7), DeriveSeed(43, 7));
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = UniformUnit(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(UniformIndex(rng, 3), 3u);
  }
}

}  // namespace
}  // namespace wsub
