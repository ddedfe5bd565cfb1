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

#include "wsub/exchange.h"

#include <algorithm>
#include <functional>

#include "wsub/errors.h"

namespace wsub {

std::optional<Element> ExchangeMap::Image(Element u) const {
  auto it = std::lower_bound(
      pairs.begin(), pairs.end(), u,
      [](const ExchangePair& p, Element key) { return p.from < key; });
  if (it == pairs.end() || it->from != u) return std::nullopt;
  return it->to;
}

ExchangeMap ComputeExchangeMap(const MatroidSpec& spec, const ElementSet& a,
                               const ElementSet& b) {
  if (!spec.IsBase(a)) {
    throw PreconditionError("exchange map: " + a.ToString() + " is not a base");
  }
  if (!spec.IsBase(b)) {
    throw PreconditionError("exchange map: " + b.ToString() + " is not a base");
  }
  const ElementSet left = a.Difference(b);
  const ElementSet right = b.Difference(a);
  const std::size_t m = left.size();

  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i) {
    const ElementSet with_u = b.With(left[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (spec.IsIndependent(with_u.Without(right[j]))) adj[i].push_back(j);
    }
  }

  constexpr auto kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(m, kFree);
  std::vector<char> visited(m);
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match_right[j] == kFree || augment(match_right[j])) {
        match_right[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(i)) {
      throw InternalError("exchange graph between " + a.ToString() + " and " +
                          b.ToString() + " has no perfect matching");
    }
  }

  ExchangeMap map;
  map.pairs.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    map.pairs[match_right[j]] = {left[match_right[j]], right[j]};
  }
  return map;
}

std::optional<std::string> ValidateExchangeMap(const MatroidSpec& spec,
                                               const ElementSet& a,
                                               const ElementSet& b,
                                               const ExchangeMap& map) {
  std::vector<Element> domain;
  std::vector<Element> codomain;
  for (const ExchangePair& p : map.pairs) {
    domain.push_back(p.from);
    codomain.push_back(p.to);
    if (!spec.IsIndependent(b.With(p.from).Without(p.to))) {
      return "(B + " + std::to_string(p.from) + ") - " + std::to_string(p.to) +
             " is dependent";
    }
  }
  const ElementSet dom = ElementSet::FromUnsorted(domain);
  const ElementSet cod = ElementSet::FromUnsorted(codomain);
  if (dom.size() != domain.size()) return "domain has repeated elements";
  if (cod.size() != codomain.size()) return "map is not injective";
  if (dom != a.Difference(b)) return "domain differs from A \\ B";
  if (cod != b.Difference(a)) return "codomain differs from B \\ A";
  return std::nullopt;
}

}  // namespace wsub
