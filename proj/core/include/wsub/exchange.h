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

#ifndef WSUB_EXCHANGE_H_
#define WSUB_EXCHANGE_H_

#include <optional>
#include <string>
#include <vector>

#include "wsub/element_set.h"
#include "wsub/matroid.h"

namespace wsub {

struct ExchangePair {
  Element from = 0;  // u in A \ B
  Element to = 0;    // g(u) in B \ A
  friend bool operator==(const ExchangePair&, const ExchangePair&) = default;
};

// Bijection g: A \ B -> B \ A between two bases with (B + u) - g(u)
// independent for every u. Pairs are sorted by `from`.
struct ExchangeMap {
  std::vector<ExchangePair> pairs;

  std::optional<Element> Image(Element u) const;
  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
};

// Builds the exchange graph (u -- v iff (B + u) - v is independent) and
// finds a perfect matching with Kuhn's augmenting paths, visiting left
// vertices and their neighbours in ascending id order. Throws
// PreconditionError unless both sets are bases, and InternalError if no
// perfect matching exists.
ExchangeMap ComputeExchangeMap(const MatroidSpec& spec, const ElementSet& a,
                               const ElementSet& b);

// Checks injectivity, exact domain A \ B and codomain B \ A, and the
// exchange property. Returns a description of the first violation.
std::optional<std::string> ValidateExchangeMap(const MatroidSpec& spec,
                                               const ElementSet& a,
                                               const ElementSet& b,
                                               const ExchangeMap& map);

}  // namespace wsub

#endif  // WSUB_EXCHANGE_H_
