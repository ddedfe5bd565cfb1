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

#include "wsub/set_function.h"

#include <bit>
#include <cmath>

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include "reference.h"
#include "wsub/datagen.h"
#include "wsub/errors.h"
#include "wsub/objectives.h"
#include "wsub/random.h"

namespace wsub {
namespace {

using ::wsub::testing::RandomSmallMatroid;
using ::wsub::testing::ReferenceIndependent;

class AffineCardinality final : public ValueOracle {
 public:
  AffineCardinality(std::size_t n, double slope, double offset)
      : ValueOracle(n), slope_(slope), offset_(offset) {}

 protected:
  double EvaluateImpl(const ElementSet& s) const override {
    return slope_ * static_cast<double>(s.size()) + offset_;
  }

 private:
  double slope_, offset_;
};

OraclePtr RandomCoverageOracle(Rng& rng, std::size_t n, std::size_t universe) {
  std::vector<ElementSet> sets(n);
  for (auto& s : sets) {
    for (Element i = 0; i < universe; ++i) {
      if (UniformUnit(rng) < 0.35) s.insert(i);
    }
  }
  std::vector<double> w(universe);
  for (double& x : w) x = 0.2 + UniformUnit(rng);
  return MakeCoverageFunction(universe, std::move(sets), std::move(w));
}

// Monotone, generally not submodular: (sum of weights)^power.
std::shared_ptr<TabulatedFunction> RandomPowerFunction(Rng& rng, std::size_t n,
                                                       double power) {
  std::vector<double> w(n);
  for (double& x : w) x = 0.1 + UniformUnit(rng);
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < values.size(); ++m) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1) total += w[i];
    }
    values[m] = std::pow(total, power);
  }
  return std::make_shared<TabulatedFunction>(n, std::move(values));
}

struct ReferenceGamma {
  double gamma = 1.0;
  std::uint64_t pairs = 0;
};

// Direct evaluation of the ratio over every pair of subset masks.
ReferenceGamma BruteGamma(const ValueOracle& f, const MatroidSpec* spec,
                          std::size_t max_union) {
  const std::size_t n = f.ground_size();
  const std::uint64_t full = std::uint64_t{1} << n;
  std::vector<double> v(full);
  for (std::uint64_t m = 0; m < full; ++m) v[m] = f.Evaluate(ElementSet::FromMask(m));
  std::vector<bool> ok(full, true);
  if (spec != nullptr) {
    for (std::uint64_t m = 0; m < full; ++m) {
      ok[m] = std::popcount(m) <= static_cast<int>(max_union) &&
              ReferenceIndependent(*spec, ElementSet::FromMask(m));
    }
  }
  ReferenceGamma out;
  for (std::uint64_t a = 0; a < full; ++a) {
    for (std::uint64_t b = 0; b < full; ++b) {
      if (!ok[a | b]) continue;
      ++out.pairs;
      const double denom = v[a | b] - v[a];
      if (denom <= 1e-12) continue;
      double num = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        const std::uint64_t bit = std::uint64_t{1} << u;
        if ((b & bit) && !(a & bit)) num += v[a | bit] - v[a];
      }
      out.gamma = std::min(out.gamma, num / denom);
    }
  }
  return out;
}

TEST(ValueOracleTest, CountsQueriesAndChecksRange) {
  ModularFunction f({1.0, 2.0, 3.0});
  EXPECT_EQ(f.queries(), 0u);
  EXPECT_DOUBLE_EQ(f.Evaluate({0, 2}), 4.0);
  EXPECT_DOUBLE_EQ(f.Evaluate({0, 2}), 4.0);
  EXPECT_EQ(f.queries(), 2u);
  EXPECT_THROW(f.Evaluate({3}), InputError);
  f.ResetQueries();
  EXPECT_EQ(f.queries(), 0u);
}

TEST(MarginalTest, ModularExample) {
  ModularFunction f({1.0, 2.0});
  EXPECT_DOUBLE_EQ(Marginal(f, 1, {}), 2.0);
  EXPECT_EQ(f.queries(), 2u);
}

TEST(MarginalTest, ElementInSetIsPreconditionError) {
  ModularFunction f({1.0, 2.0});
  EXPECT_THROW(Marginal(f, 0, {0}), PreconditionError);
}

TEST(MarginalTest, MatchesTwoCallsAndIsNonNegativeOnCoverage) {
  Rng rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    auto f = RandomCoverageOracle(rng, 8, 12);
    for (std::uint64_t m = 0; m < 256; ++m) {
      const ElementSet a = ElementSet::FromMask(m);
      for (Element u = 0; u < 8; ++u) {
        if (a.contains(u)) continue;
        const double direct = f->Evaluate(a.With(u)) - f->Evaluate(a);
        const double mg = Marginal(*f, u, a);
        ASSERT_EQ(mg, direct);
        ASSERT_GE(mg, 0.0);
      }
    }
  }
}

TEST(NormalizeTest, Examples) {
  auto f = std::make_shared<AffineCardinality>(4, 1.0, 5.0);
  auto g = Normalize(f);
  EXPECT_EQ(g->Evaluate({}), 0.0);
  EXPECT_DOUBLE_EQ(g->Evaluate({0}), 1.0);
  EXPECT_DOUBLE_EQ(g->Evaluate({0, 1, 3}), 3.0);
}

TEST(NormalizeTest, CachesEmptyValue) {
  auto f = std::make_shared<AffineCardinality>(4, 2.0, -7.0);
  auto g = Normalize(f);
  g->Evaluate({1});
  const auto after_first = f->queries();
  EXPECT_EQ(after_first, 2u);
  for (int i = 0; i < 5; ++i) g->Evaluate({1, 2});
  EXPECT_EQ(f->queries(), after_first + 5);
  g->Evaluate({});
  EXPECT_EQ(f->queries(), after_first + 5);
}

TEST(EstimateGammaTest, CoverageIsOne) {
  Rng rng(42);
  auto f = RandomCoverageOracle(rng, 8, 15);
  const GammaEstimate est = EstimateGamma(*f, MatroidSpec::Uniform(8, 8), 8);
  EXPECT_NEAR(est.gamma, 1.0, 1e-9);
}

TEST(EstimateGammaTest, SupermodularPairExample) {
  TabulatedFunction f(2, {0.0, 1.0, 1.0, 3.0});
  const GammaEstimate est = EstimateGamma(f, MatroidSpec::Uniform(2, 2), 2);
  EXPECT_NEAR(est.gamma, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(est.witness_a, ElementSet{});
  EXPECT_EQ(est.witness_b, (ElementSet{0, 1}));
}

TEST(EstimateGammaTest, ModularIsOne) {
  ModularFunction f({0.5, 1.5, 2.0, 0.1, 3.0});
  EXPECT_NEAR(EstimateGamma(f, MatroidSpec::Uniform(5, 3), 3).gamma, 1.0, 1e-12);
  GammaOptions unrestricted;
  unrestricted.mode = GammaMode::kUnrestricted;
  EXPECT_NEAR(EstimateGamma(f, MatroidSpec::Uniform(5, 3), 3, unrestricted).gamma,
              1.0, 1e-12);
}

TEST(EstimateGammaTest, NoQualifyingPairGivesOne) {
  TabulatedFunction f(2, {1.0, 1.0, 1.0, 1.0});
  const GammaEstimate est = EstimateGamma(f, MatroidSpec::Uniform(2, 2), 2);
  EXPECT_EQ(est.gamma, 1.0);
  EXPECT_TRUE(est.witness_a.empty());
  EXPECT_TRUE(est.witness_b.empty());
}

TEST(EstimateGammaTest, GuardsRaiseSizeError) {
  ModularFunction big(std::vector<double>(21, 1.0));
  EXPECT_THROW(EstimateGamma(big, MatroidSpec::Uniform(21, 2), 2), SizeError);
  ModularFunction small(std::vector<double>(10, 1.0));
  GammaOptions tight;
  tight.max_pairs = 100;
  EXPECT_THROW(EstimateGamma(small, MatroidSpec::Uniform(10, 10), 10, tight),
               SizeError);
}

TEST(EstimateGammaTest, JsonFields) {
  TabulatedFunction f(2, {0.0, 1.0, 1.0, 3.0});
  const nlohmann::json j = ToJson(EstimateGamma(f, MatroidSpec::Uniform(2, 2), 2));
  for (const char* key : {"gamma", "witness_a", "witness_b", "pairs_checked"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["witness_b"], nlohmann::json::array({0, 1}));
}

TEST(EstimateGammaPropertyTest, MatchesBruteForceAndCountsPairs) {
  Rng rng(43);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 5 + trial % 3;
    const MatroidSpec m = RandomSmallMatroid(rng, n, trial % 3);
    auto f = RandomPowerFunction(rng, n, 1.0 + UniformUnit(rng));
    const std::size_t max_union = 1 + trial % n;
    const GammaEstimate est = EstimateGamma(*f, m, max_union);
    const ReferenceGamma ref = BruteGamma(*f, &m, max_union);
    ASSERT_NEAR(est.gamma, ref.gamma, 1e-12);
    ASSERT_EQ(est.pairs_checked, ref.pairs);
    // The witness is a qualifying pair attaining the estimate.
    const ElementSet u = est.witness_a.Union(est.witness_b);
    ASSERT_TRUE(m.IsIndependent(u));
    ASSERT_LE(u.size(), max_union);
    if (est.gamma < 1.0) {
      const double fa = f->Evaluate(est.witness_a);
      double num = 0.0;
      for (Element e : est.witness_b.Difference(est.witness_a)) {
        num += f->Evaluate(est.witness_a.With(e)) - fa;
      }
      ASSERT_NEAR(num / (f->Evaluate(u) - fa), est.gamma, 1e-12);
    }
    GammaOptions unrestricted;
    unrestricted.mode = GammaMode::kUnrestricted;
    const GammaEstimate all = EstimateGamma(*f, m, max_union, unrestricted);
    const ReferenceGamma ref_all = BruteGamma(*f, nullptr, n);
    ASSERT_NEAR(all.gamma, ref_all.gamma, 1e-12);
    ASSERT_EQ(all.pairs_checked, ref_all.pairs);
  }
}

TEST(EstimateGammaPropertyTest, RestrictedAtLeastUnrestricted) {
  Rng rng(44);
  GammaOptions unrestricted;
  unrestricted.mode = GammaMode::kUnrestricted;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + trial % 5;  // up to 8
    const MatroidSpec m = RandomSmallMatroid(rng, n, trial % 3);
    auto f = RandomPowerFunction(rng, n, 1.0 + 1.5 * UniformUnit(rng));
    const double restricted = EstimateGamma(*f, m, m.Rank()).gamma;
    const double full = EstimateGamma(*f, m, n, unrestricted).gamma;
    ASSERT_GE(restricted, full - 1e-12);
    ASSERT_LE(restricted, 1.0);
    ASSERT_GT(full, 0.0);
  }
}

TEST(EstimateGammaPropertyTest, SubmodularOraclesGiveOne) {
  Rng rng(45);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = RandomCoverageOracle(rng, 7, 10);
    const MatroidSpec m = RandomSmallMatroid(rng, 7, trial % 3);
    EXPECT_NEAR(EstimateGamma(*f, m, 7).gamma, 1.0, 1e-9);
    auto concave = RandomPowerFunction(rng, 7, 0.5);
    EXPECT_NEAR(EstimateGamma(*concave, m, 7).gamma, 1.0, 1e-9);
  }
}

TEST(CheckMonotoneTest, Examples) {
  Rng rng(46);
  auto cov = RandomCoverageOracle(rng, 8, 10);
  EXPECT_TRUE(CheckMonotone(*cov, 8).monotone);
  AffineCardinality neg(4, -1.0, 0.0);
  const MonotonicityReport r = CheckMonotone(neg, 4);
  EXPECT_FALSE(r.monotone);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->first, ElementSet{});
  EXPECT_EQ(r.counterexample->second, ElementSet{0});
}

TEST(CheckMonotoneTest, DppKernelIsMonotone) {
  Rng rng(47);
  auto frames = SyntheticFrames(6, 3, 0.7, rng);
  auto f = DppDeterminantOracle(GaussianGram(frames, 1.0));
  EXPECT_TRUE(CheckMonotone(*f, 6).monotone);
}

TEST(CheckMonotoneTest, TooLargeIsSizeError) {
  ModularFunction f(std::vector<double>(16, 1.0));
  EXPECT_THROW(CheckMonotone(f, 16), SizeError);
}

TEST(CheckMonotoneTest, FindsInteriorViolation) {
  // Monotone except f({0,1}) < f({0}).
  TabulatedFunction f(3, {0, 2, 1, 1.5, 1, 3, 2, 4});
  const MonotonicityReport r = CheckMonotone(f, 3);
  ASSERT_FALSE(r.monotone);
  const auto& [a, b] = *r.counterexample;
  EXPECT_TRUE(a.IsSubsetOf(b));
  EXPECT_GT(f.Evaluate(a), f.Evaluate(b) + kValueTolerance);
}

}  // namespace
}  // namespace wsub
