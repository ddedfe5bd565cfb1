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

#include "wsub/datagen.h"

#include <cmath>
#include <filesystem>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "reference.h"
#include "wsub/errors.h"
#include "wsub/objectives.h"
#include "wsub/random.h"

namespace wsub {
namespace {

using ::wsub::testing::CountComponents;

TEST(ArMatrixTest, ZeroVarianceGivesZeroMatrix) {
  Rng rng(101);
  EXPECT_TRUE(ArMatrix(5, 7, 0.5, 0.0, rng).isZero(0.0));
}

TEST(ArMatrixTest, WhiteNoiseVariance) {
  Rng rng(102);
  const Eigen::MatrixXd x = ArMatrix(100, 1000, 0.0, 10.0, rng);
  const double mean = x.mean();
  const double var = (x.array() - mean).square().sum() / (x.size() - 1);
  EXPECT_GE(var, 9.7);
  EXPECT_LE(var, 10.3);
}

TEST(ArMatrixTest, LagOneAutocorrelationIsAlpha) {
  Rng rng(103);
  const Eigen::MatrixXd x = ArMatrix(1, 100000, 0.5, 10.0, rng);
  const Eigen::VectorXd row = x.row(0).transpose();
  const double mean = row.mean();
  double num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    den += (row[j] - mean) * (row[j] - mean);
    if (j > 0) num += (row[j] - mean) * (row[j - 1] - mean);
  }
  EXPECT_NEAR(num / den, 0.5, 0.01);
}

TEST(ArMatrixTest, RejectsNonStationaryAlphaAndNegativeVariance) {
  Rng rng(104);
  EXPECT_THROW(ArMatrix(2, 2, 1.0, 1.0, rng), InputError);
  EXPECT_THROW(ArMatrix(2, 2, -1.5, 1.0, rng), InputError);
  EXPECT_THROW(ArMatrix(2, 2, 0.5, -1.0, rng), InputError);
}

TEST(RandomGraphicMatroidTest, RankBoundsAndNoSelfLoops) {
  Rng rng(105);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t v = 2 + trial % 7;
    const MatroidSpec m = RandomGraphicMatroid(v, 3 + trial, rng);
    EXPECT_LE(m.Rank(), v - 1);
    for (const GraphEdge& e : std::get<GraphicMatroid>(m.variant()).edges) {
      ASSERT_NE(e.u, e.v);
      ASSERT_LT(e.u, v);
      ASSERT_LT(e.v, v);
    }
  }
  EXPECT_EQ(RandomGraphicMatroid(5, 1, rng).Rank(), 1u);
}

TEST(RandomGraphicMatroidTest, RankIsVerticesMinusComponents) {
  Rng rng(106);
  for (int trial = 0; trial < 10; ++trial) {
    const MatroidSpec m = RandomGraphicMatroid(100, 200, rng);
    const auto& g = std::get<GraphicMatroid>(m.variant());
    EXPECT_EQ(m.Rank(), 100 - CountComponents(100, g.edges));
  }
}

TEST(RandomGraphicMatroidTest, EdgePairsAreUniform) {
  Rng rng(107);
  std::map<std::pair<int, int>, int> counts;
  const int edges = 30000;
  const MatroidSpec m = RandomGraphicMatroid(4, edges, rng);
  for (const GraphEdge& e : std::get<GraphicMatroid>(m.variant()).edges) {
    counts[{std::min(e.u, e.v), std::max(e.u, e.v)}]++;
  }
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [pair, c] : counts) {
    EXPECT_NEAR(c, edges / 6.0, 5.0 * std::sqrt(edges * (1.0 / 6) * (5.0 / 6)));
  }
}

TEST(RandomPartitionMatroidTest, SingleBlock) {
  Rng rng(108);
  for (int trial = 0; trial < 20; ++trial) {
    const MatroidSpec m = RandomPartitionMatroid(30, 1, rng);
    const auto& p = std::get<PartitionMatroid>(m.variant());
    ASSERT_EQ(p.blocks.size(), 1u);
    EXPECT_EQ(p.blocks[0], ElementSet::Range(30));
    EXPECT_EQ(m.Rank(), p.capacities[0]);
    EXPECT_LE(p.capacities[0], 30u);
  }
}

TEST(RandomPartitionMatroidTest, BlocksPartitionGroundSet) {
  Rng rng(109);
  for (int trial = 0; trial < 50; ++trial) {
    const MatroidSpec m = RandomPartitionMatroid(25, 10, rng);
    const auto& p = std::get<PartitionMatroid>(m.variant());
    ASSERT_EQ(p.blocks.size(), 10u);
    ElementSet all;
    std::size_t total = 0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      total += p.blocks[b].size();
      all = all.Union(p.blocks[b]);
      ASSERT_LE(p.capacities[b], p.blocks[b].size());
    }
    EXPECT_EQ(total, 25u);
    EXPECT_EQ(all, ElementSet::Range(25));
  }
}

TEST(RandomPartitionMatroidTest, MeanRankIsQuarterOfGroundSet) {
  Rng rng(110);
  double total = 0.0;
  const int instances = 10000;
  for (int i = 0; i < instances; ++i) total += RandomPartitionMatroid(40, 4, rng).Rank();
  EXPECT_NEAR(total / instances, 10.0, 0.2);
}

TEST(IntervalPartitionMatroidTest, Blocks) {
  const MatroidSpec m = IntervalPartitionMatroid(10, 4);
  EXPECT_EQ(m.Rank(), 3u);
  EXPECT_TRUE(m.IsIndependent({0, 4, 8}));
  EXPECT_FALSE(m.IsIndependent({0, 3}));
  EXPECT_TRUE(m.IsIndependent({3, 4}));
  EXPECT_EQ(IntervalPartitionMatroid(10, 4, 2).Rank(), 6u);
}

TEST(LinRegInstanceTest, SupportIsBaseWithSignedUnitEntries) {
  Rng rng(111);
  for (int trial = 0; trial < 10; ++trial) {
    MatroidSpec m = trial % 2 ? RandomGraphicMatroid(20, 40, rng)
                              : RandomPartitionMatroid(40, 5, rng);
    const std::size_t rank = m.Rank();
    LinRegInstance inst = MakeLinRegInstance(30, 40, std::move(m), rng);
    EXPECT_EQ(inst.support.size(), rank);
    EXPECT_TRUE(inst.matroid.IsIndependent(inst.support));
    for (Eigen::Index j = 0; j < 40; ++j) {
      const double b = inst.beta_true[j];
      if (inst.support.contains(static_cast<Element>(j))) {
        EXPECT_EQ(std::abs(b), 1.0);
      } else {
        EXPECT_EQ(b, 0.0);
      }
    }
    LeastSquaresObjective f(inst.problem);
    EXPECT_NEAR(inst.ground_truth_value, f.Evaluate(inst.support), 1e-9);
  }
}

TEST(LinRegInstanceTest, NoiselessResponseIsPerfectFit) {
  Rng rng(112);
  LinRegOptions options;
  options.add_noise = false;
  LinRegInstance inst =
      MakeLinRegInstance(30, 20, MatroidSpec::Uniform(20, 5), rng, options);
  EXPECT_TRUE(inst.problem.response.isApprox(inst.problem.design * inst.beta_true));
  const double y2 = inst.problem.response.squaredNorm();
  EXPECT_NEAR(inst.ground_truth_value, y2, 1e-9 * y2);
}

TEST(LinRegInstanceTest, MismatchedMatroidIsInputError) {
  Rng rng(113);
  EXPECT_THROW(MakeLinRegInstance(10, 20, MatroidSpec::Uniform(19, 3), rng),
               InputError);
}

TEST(LinRegInstanceTest, SaveLoadRoundTrip) {
  Rng rng(114);
  LinRegInstance inst = MakeLinRegInstance(12, 15, RandomGraphicMatroid(8, 15, rng), rng);
  inst.seed = 114;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("wsub_linreg_" + std::to_string(::getpid()));
  SaveLinRegInstance(inst, dir);
  for (const char* file : {"X.csv", "y.csv", "beta.csv", "matroid.json", "meta.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / file)) << file;
  }
  const LinRegInstance back = LoadLinRegInstance(dir);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(back.problem.design, inst.problem.design);
  EXPECT_EQ(back.problem.response, inst.problem.response);
  EXPECT_EQ(back.beta_true, inst.beta_true);
  EXPECT_EQ(back.support, inst.support);
  EXPECT_EQ(back.seed, inst.seed);
  EXPECT_EQ(back.ground_truth_value, inst.ground_truth_value);
  EXPECT_EQ(back.matroid.ToJson(), inst.matroid.ToJson());
}

TEST(DatagenTest, GeneratorsAreDeterministicGivenSeed) {
  Rng a(115), b(115);
  EXPECT_EQ(ArMatrix(4, 6, 0.5, 10.0, a), ArMatrix(4, 6, 0.5, 10.0, b));
  EXPECT_EQ(RandomGraphicMatroid(10, 20, a).ToJson(), RandomGraphicMatroid(10, 20, b).ToJson());
  EXPECT_EQ(RandomPartitionMatroid(20, 3, a).ToJson(),
            RandomPartitionMatroid(20, 3, b).ToJson());
  const auto fa = SyntheticFrames(5, 3, 0.3, a);
  const auto fb = SyntheticFrames(5, 3, 0.3, b);
  for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(fa[i], fb[i]);
}

TEST(OneHotLogisticTest, Structure) {
  Rng rng(116);
  const OneHotInstance inst = MakeOneHotLogistic(200, 5, 4, 1e-6, rng);
  ASSERT_EQ(inst.problem.features.rows(), 200);
  ASSERT_EQ(inst.problem.features.cols(), 20);
  for (Eigen::Index i = 0; i < 200; ++i) {
    for (Eigen::Index v = 0; v < 5; ++v) {
      EXPECT_EQ(inst.problem.features.row(i).segment(4 * v, 4).sum(), 1.0);
    }
    EXPECT_TRUE(inst.problem.labels[i] == 0.0 || inst.problem.labels[i] == 1.0);
  }
  EXPECT_EQ(inst.matroid.Rank(), 5u);
  EXPECT_TRUE(inst.matroid.IsIndependent({0, 4, 8, 12, 16}));
  EXPECT_FALSE(inst.matroid.IsIndependent({0, 1}));
}

}  // namespace
}  // namespace wsub
