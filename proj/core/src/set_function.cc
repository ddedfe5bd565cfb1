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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "wsub/errors.h"

namespace wsub {

double ValueOracle::Evaluate(const ElementSet& s) const {
  if (!s.empty() && s.max() >= ground_size_) {
    throw InputError("value oracle: element id " + std::to_string(s.max()) +
                     " out of range for ground set of size " +
                     std::to_string(ground_size_));
  }
  queries_.Add();
  return EvaluateImpl(s);
}

std::vector<std::string> ValueOracle::Warnings() const {
  std::lock_guard<std::mutex> lock(warnings_mu_);
  return warnings_;
}

std::uint64_t ValueOracle::warning_count() const {
  std::lock_guard<std::mutex> lock(warnings_mu_);
  return warning_count_;
}

void ValueOracle::Warn(std::string message) const {
  std::lock_guard<std::mutex> lock(warnings_mu_);
  ++warning_count_;
  if (warnings_.size() < kMaxWarnings) warnings_.push_back(std::move(message));
}

double Marginal(const ValueOracle& f, Element u, const ElementSet& a) {
  if (a.contains(u)) {
    throw PreconditionError("marginal: element " + std::to_string(u) +
                            " already in " + a.ToString());
  }
  return f.Evaluate(a.With(u)) - f.Evaluate(a);
}

namespace {

class NormalizedOracle final : public ValueOracle {
 public:
  explicit NormalizedOracle(OraclePtr inner)
      : ValueOracle(inner->ground_size()), inner_(std::move(inner)) {}

  std::vector<std::string> Warnings() const override {
    auto w = inner_->Warnings();
    auto own = ValueOracle::Warnings();
    w.insert(w.end(), own.begin(), own.end());
    return w;
  }
  std::uint64_t warning_count() const override {
    return inner_->warning_count() + ValueOracle::warning_count();
  }

 protected:
  double EvaluateImpl(const ElementSet& s) const override {
    std::call_once(empty_once_,
                   [this] { empty_value_ = inner_->Evaluate(ElementSet{}); });
    if (s.empty()) return 0.0;
    return inner_->Evaluate(s) - empty_value_;
  }

 private:
  OraclePtr inner_;
  mutable std::once_flag empty_once_;
  mutable double empty_value_ = 0.0;
};

// f over bitmasks, each distinct set queried once.
class MaskMemo {
 public:
  MaskMemo(const ValueOracle& f, std::size_t n)
      : f_(f), values_(std::size_t{1} << n, kUnset) {}

  double operator()(std::uint64_t mask) {
    double& v = values_[mask];
    if (std::isnan(v)) v = f_.Evaluate(ElementSet::FromMask(mask));
    return v;
  }

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  const ValueOracle& f_;
  std::vector<double> values_;
};

std::uint64_t Pow3(unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

// Independent sets with at most `max_size` members, as masks, in DFS order
// (each set extended only by ids above its largest member).
void CollectIndependent(const MatroidSpec& spec, std::size_t max_size,
                        ElementSet current, Element next,
                        std::vector<std::uint64_t>& out) {
  out.push_back(current.ToMask());
  if (current.size() == max_size) return;
  for (Element e = next; e < spec.ground_size(); ++e) {
    ElementSet extended = current.With(e);
    if (spec.IsIndependent(extended)) {
      CollectIndependent(spec, max_size, std::move(extended), e + 1, out);
    }
  }
}

}  // namespace

OraclePtr Normalize(OraclePtr f) {
  return std::make_shared<NormalizedOracle>(std::move(f));
}

nlohmann::json ToJson(const GammaEstimate& estimate) {
  return nlohmann::json{
      {"gamma", estimate.gamma},
      {"witness_a", std::vector<Element>(estimate.witness_a.begin(),
                                         estimate.witness_a.end())},
      {"witness_b", std::vector<Element>(estimate.witness_b.begin(),
                                         estimate.witness_b.end())},
      {"pairs_checked", estimate.pairs_checked},
  };
}

GammaEstimate EstimateGamma(const ValueOracle& f, const MatroidSpec& spec,
                            std::size_t max_union_size,
                            const GammaOptions& options) {
  const std::size_t n = spec.ground_size();
  if (n > options.max_ground_size || n > 62) {
    throw SizeError("gamma estimation: ground set of size " + std::to_string(n) +
                    " exceeds the enumeration guard of " +
                    std::to_string(options.max_ground_size));
  }
  if (f.ground_size() != n) {
    throw InputError("gamma estimation: oracle and matroid ground sets differ");
  }

  std::vector<std::uint64_t> unions;
  if (options.mode == GammaMode::kRestricted) {
    CollectIndependent(spec, max_union_size, ElementSet{}, 0, unions);
  } else {
    unions.resize(std::size_t{1} << n);
    for (std::uint64_t m = 0; m < unions.size(); ++m) unions[m] = m;
  }
  std::uint64_t total_pairs = 0;
  for (std::uint64_t u : unions) {
    total_pairs += Pow3(static_cast<unsigned>(std::popcount(u)));
    if (total_pairs > options.max_pairs) {
      throw SizeError("gamma estimation: more than " +
                      std::to_string(options.max_pairs) + " pairs to enumerate");
    }
  }

  MaskMemo value(f, n);
  GammaEstimate best;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t u : unions) {
    const double f_union = value(u);
    // A ranges over subsets of U; B = (U \ A) + X for every X subset of A.
    // The ratio depends only on U \ A, so it is computed once per A.
    for (std::uint64_t a = u;; a = (a - 1) & u) {
      best.pairs_checked += std::uint64_t{1} << std::popcount(a);
      const double f_a = value(a);
      const double denom = f_union - f_a;
      if (denom > options.min_denominator) {
        double num = 0.0;
        for (std::uint64_t rest = u & ~a; rest != 0; rest &= rest - 1) {
          num += value(a | (rest & -rest)) - f_a;
        }
        const double ratio = num / denom;
        if (ratio < min_ratio) {
          min_ratio = ratio;
          best.witness_a = ElementSet::FromMask(a);
          best.witness_b = ElementSet::FromMask(u & ~a);
        }
      }
      if (a == 0) break;
    }
  }
  best.gamma = std::min(1.0, min_ratio);
  return best;
}

MonotonicityReport CheckMonotone(const ValueOracle& f, std::size_t n) {
  if (n > 15) {
    throw SizeError("monotonicity check: n = " + std::to_string(n) +
                    " exceeds the limit of 15");
  }
  MaskMemo value(f, n);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t b = 0; b <= full; ++b) {
    const double f_b = value(b);
    // Submasks of b in ascending order.
    for (std::uint64_t a = 0;; a = (a - b) & b) {
      if (value(a) > f_b + kValueTolerance) {
        return {false, std::make_pair(ElementSet::FromMask(a),
                                      ElementSet::FromMask(b))};
      }
      if (a == b) break;
    }
  }
  return {};
}

}  // namespace wsub
