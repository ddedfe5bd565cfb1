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

#ifndef WSUB_SET_FUNCTION_H_
#define WSUB_SET_FUNCTION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wsub/element_set.h"
#include "wsub/matroid.h"

namespace wsub {

// Absolute tolerance for comparing objective values.
inline constexpr double kValueTolerance = 1e-9;

// Value oracle for a set function over 0..ground_size()-1. Every call to
// Evaluate() counts as one query. Implementations must be deterministic and
// safe for concurrent Evaluate() calls.
class ValueOracle {
 public:
  explicit ValueOracle(std::size_t ground_size) : ground_size_(ground_size) {}
  virtual ~ValueOracle() = default;
  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  // Throws InputError for ids outside the ground set.
  double Evaluate(const ElementSet& s) const;

  std::size_t ground_size() const { return ground_size_; }
  std::uint64_t queries() const { return queries_.count(); }
  void ResetQueries() const { queries_.Reset(); }

  // Numerical warnings raised while evaluating (e.g. a fit that did not
  // converge). Capped at kMaxWarnings messages; warning_count() keeps the
  // full tally.
  virtual std::vector<std::string> Warnings() const;
  virtual std::uint64_t warning_count() const;

  static constexpr std::size_t kMaxWarnings = 16;

 protected:
  virtual double EvaluateImpl(const ElementSet& s) const = 0;
  void Warn(std::string message) const;

 private:
  std::size_t ground_size_;
  mutable QueryCounter queries_;
  mutable std::mutex warnings_mu_;
  mutable std::vector<std::string> warnings_;
  mutable std::uint64_t warning_count_ = 0;
};

using OraclePtr = std::shared_ptr<const ValueOracle>;

// f(a + u) - f(a), costing exactly two queries. Throws PreconditionError
// if u is already in a.
double Marginal(const ValueOracle& f, Element u, const ElementSet& a);

// Wraps f as S -> f(S) - f(empty). f(empty) is queried once and cached; the
// empty set then evaluates to exactly 0 without touching f.
OraclePtr Normalize(OraclePtr f);

struct GammaEstimate {
  double gamma = 1.0;
  ElementSet witness_a;
  ElementSet witness_b;
  std::uint64_t pairs_checked = 0;
};

nlohmann::json ToJson(const GammaEstimate& estimate);

enum class GammaMode {
  // Pairs with A u B independent in the matroid and |A u B| bounded.
  kRestricted,
  // Every pair A, B of subsets of the ground set.
  kUnrestricted,
};

struct GammaOptions {
  GammaMode mode = GammaMode::kRestricted;
  // Ground sets larger than this are refused.
  std::size_t max_ground_size = 20;
  // Refuse when more pairs than this would be enumerated.
  std::uint64_t max_pairs = 50'000'000;
  // Pairs with f(B | A) at or below this are skipped.
  double min_denominator = 1e-12;
};

// Brute-force submodularity ratio: the minimum over qualifying pairs of
// sum_{u in B} f(u | A) / f(B | A), clamped to at most 1. Overlapping A and B
// are enumerated as well; members of A contribute zero to the sum. When no
// pair qualifies the ratio is 1 with empty witnesses. Throws SizeError when
// a guard is exceeded; it never samples.
GammaEstimate EstimateGamma(const ValueOracle& f, const MatroidSpec& spec,
                            std::size_t max_union_size,
                            const GammaOptions& options = {});

struct MonotonicityReport {
  bool monotone = true;
  // First (A, B) with A a subset of B and f(A) > f(B) + kValueTolerance.
  std::optional<std::pair<ElementSet, ElementSet>> counterexample;
};

// Exhaustive check over all A subset of B subset of {0..n-1}; n <= 15.
MonotonicityReport CheckMonotone(const ValueOracle& f, std::size_t n);

}  // namespace wsub

#endif  // WSUB_SET_FUNCTION_H_
