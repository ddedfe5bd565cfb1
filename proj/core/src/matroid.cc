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

#include "wsub/matroid.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <nlohmann/json.hpp>

#include "union_find.h"
#include "wsub/errors.h"

namespace wsub {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t GraphicRank(const GraphicMatroid& g) {
  internal::UnionFind uf(g.num_vertices);
  std::size_t rank = 0;
  for (const GraphEdge& e : g.edges) {
    if (e.u != e.v && uf.Union(e.u, e.v)) ++rank;
  }
  return rank;
}

bool GraphicIndependent(const GraphicMatroid& g, const ElementSet& s) {
  if (s.size() >= g.num_vertices) return false;
  internal::UnionFind uf(g.num_vertices);
  for (Element id : s) {
    const GraphEdge& e = g.edges[id];
    if (e.u == e.v || !uf.Union(e.u, e.v)) return false;
  }
  return true;
}

}  // namespace

MatroidSpec::MatroidSpec(Variant v) : variant_(std::move(v)) {
  std::visit(
      Overloaded{
          [this](const UniformMatroid& u) {
            n_ = u.n;
            rank_ = std::min(u.n, u.k);
          },
          [this](const PartitionMatroid& p) {
            n_ = p.block_of.size();
            rank_ = 0;
            for (std::size_t i = 0; i < p.blocks.size(); ++i) {
              rank_ += std::min(p.blocks[i].size(), p.capacities[i]);
            }
          },
          [this](const GraphicMatroid& g) {
            n_ = g.edges.size();
            rank_ = GraphicRank(g);
          },
          [this](const ContractionMatroid& c) {
            n_ = c.base->ground_size();
            rank_ = c.base->Rank() - c.contracted.size();
          },
      },
      variant_);
}

MatroidSpec MatroidSpec::Uniform(std::size_t n, std::size_t k) {
  return MatroidSpec(UniformMatroid{n, k});
}

MatroidSpec MatroidSpec::Partition(std::vector<ElementSet> blocks,
                                   std::vector<std::size_t> capacities) {
  if (blocks.size() != capacities.size()) {
    throw InputError("partition matroid: " + std::to_string(blocks.size()) +
                     " blocks but " + std::to_string(capacities.size()) +
                     " capacities");
  }
  std::size_t n = 0;
  for (const ElementSet& b : blocks) n += b.size();
  constexpr auto kUnassigned = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> block_of(n, kUnassigned);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Element e : blocks[i]) {
      if (e >= n) {
        throw InputError("partition matroid: blocks do not cover 0.." +
                         std::to_string(n - 1) + " (found id " +
                         std::to_string(e) + ")");
      }
      if (block_of[e] != kUnassigned) {
        throw InputError("partition matroid: element " + std::to_string(e) +
                         " appears in two blocks");
      }
      block_of[e] = static_cast<std::uint32_t>(i);
    }
  }
  return MatroidSpec(PartitionMatroid{std::move(blocks), std::move(capacities),
                                      std::move(block_of)});
}

MatroidSpec MatroidSpec::Graphic(std::size_t num_vertices,
                                 std::vector<GraphEdge> edges) {
  for (const GraphEdge& e : edges) {
    if (e.u >= num_vertices || e.v >= num_vertices) {
      throw InputError("graphic matroid: edge endpoint out of range");
    }
  }
  return MatroidSpec(GraphicMatroid{num_vertices, std::move(edges)});
}

MatroidKind MatroidSpec::kind() const {
  return static_cast<MatroidKind>(variant_.index());
}

ElementSet MatroidSpec::GroundSet() const {
  ElementSet all = ElementSet::Range(n_);
  if (const auto* c = std::get_if<ContractionMatroid>(&variant_)) {
    return all.Difference(c->contracted);
  }
  return all;
}

void MatroidSpec::CheckRange(const ElementSet& s) const {
  if (!s.empty() && s.max() >= n_) {
    throw InputError("element id " + std::to_string(s.max()) +
                     " out of range for ground set of size " +
                     std::to_string(n_));
  }
}

bool MatroidSpec::IsIndependent(const ElementSet& s) const {
  CheckRange(s);
  return std::visit(
      Overloaded{
          [&](const UniformMatroid& u) { return s.size() <= u.k; },
          [&](const PartitionMatroid& p) {
            std::vector<std::size_t> used(p.blocks.size(), 0);
            for (Element e : s) {
              std::uint32_t b = p.block_of[e];
              if (++used[b] > p.capacities[b]) return false;
            }
            return true;
          },
          [&](const GraphicMatroid& g) { return GraphicIndependent(g, s); },
          [&](const ContractionMatroid& c) {
            if (s.Intersects(c.contracted)) return false;
            return c.base->IsIndependent(s.Union(c.contracted));
          },
      },
      variant_);
}

bool MatroidSpec::IsBase(const ElementSet& s) const {
  return s.size() == rank_ && IsIndependent(s);
}

std::size_t MatroidSpec::RankOf(const ElementSet& s) const {
  CheckRange(s);
  return std::visit(
      Overloaded{
          [&](const UniformMatroid& u) { return std::min(s.size(), u.k); },
          [&](const PartitionMatroid& p) {
            std::vector<std::size_t> used(p.blocks.size(), 0);
            for (Element e : s) ++used[p.block_of[e]];
            std::size_t r = 0;
            for (std::size_t i = 0; i < used.size(); ++i) {
              r += std::min(used[i], p.capacities[i]);
            }
            return r;
          },
          [&](const GraphicMatroid& g) {
            internal::UnionFind uf(g.num_vertices);
            std::size_t r = 0;
            for (Element id : s) {
              const GraphEdge& e = g.edges[id];
              if (e.u != e.v && uf.Union(e.u, e.v)) ++r;
            }
            return r;
          },
          [&](const ContractionMatroid& c) {
            return c.base->RankOf(s.Union(c.contracted)) - c.contracted.size();
          },
      },
      variant_);
}

MatroidSpec MatroidSpec::Contract(const ElementSet& s) const {
  if (!IsIndependent(s)) {
    throw PreconditionError("cannot contract dependent set " + s.ToString());
  }
  if (const auto* c = std::get_if<ContractionMatroid>(&variant_)) {
    return MatroidSpec(ContractionMatroid{c->base, c->contracted.Union(s)});
  }
  return MatroidSpec(
      ContractionMatroid{std::make_shared<const MatroidSpec>(*this), s});
}

nlohmann::json MatroidSpec::ToJson() const {
  return std::visit(
      Overloaded{
          [](const UniformMatroid& u) {
            return nlohmann::json{{"variant", "uniform"}, {"n", u.n}, {"k", u.k}};
          },
          [](const PartitionMatroid& p) {
            nlohmann::json blocks = nlohmann::json::array();
            for (const ElementSet& b : p.blocks) {
              blocks.push_back(std::vector<Element>(b.begin(), b.end()));
            }
            return nlohmann::json{{"variant", "partition"},
                                  {"blocks", blocks},
                                  {"capacities", p.capacities}};
          },
          [](const GraphicMatroid& g) {
            nlohmann::json edges = nlohmann::json::array();
            for (const GraphEdge& e : g.edges) edges.push_back({e.u, e.v});
            return nlohmann::json{{"variant", "graphic"},
                                  {"num_vertices", g.num_vertices},
                                  {"edges", edges}};
          },
          [](const ContractionMatroid&) -> nlohmann::json {
            throw InputError("contraction specs are runtime-only");
          },
      },
      variant_);
}

MatroidSpec MatroidSpec::FromJson(const nlohmann::json& doc) {
  try {
    const std::string variant = doc.at("variant").get<std::string>();
    if (variant == "uniform") {
      return Uniform(doc.at("n").get<std::size_t>(), doc.at("k").get<std::size_t>());
    }
    if (variant == "partition") {
      std::vector<ElementSet> blocks;
      for (const auto& b : doc.at("blocks")) {
        blocks.push_back(ElementSet::FromUnsorted(b.get<std::vector<Element>>()));
      }
      return Partition(std::move(blocks),
                       doc.at("capacities").get<std::vector<std::size_t>>());
    }
    if (variant == "graphic") {
      std::vector<GraphEdge> edges;
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
          throw InputError("graphic matroid: edge must be a [u, v] pair");
        }
        edges.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>()});
      }
      return Graphic(doc.at("num_vertices").get<std::size_t>(), std::move(edges));
    }
    throw InputError("unknown matroid variant '" + variant + "'");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed matroid JSON: ") + e.what());
  }
}

ElementSet MaxWeightBase(const MatroidSpec& spec, std::span<const double> weights,
                         QueryCounter* independence_queries) {
  if (weights.size() < spec.ground_size()) {
    throw InputError("MaxWeightBase: " + std::to_string(weights.size()) +
                     " weights for ground set of size " +
                     std::to_string(spec.ground_size()));
  }
  ElementSet ground = spec.GroundSet();
  std::vector<Element> order(ground.begin(), ground.end());
  for (Element e : order) {
    if (std::isnan(weights[e])) {
      throw InputError("MaxWeightBase: weight of element " + std::to_string(e) +
                       " is NaN");
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    return weights[a] > weights[b];
  });
  ElementSet base;
  for (Element e : order) {
    ElementSet candidate = base.With(e);
    if (independence_queries != nullptr) independence_queries->Add();
    if (spec.IsIndependent(candidate)) base = std::move(candidate);
  }
  return base;
}

std::vector<Element> FeasibleExtensions(const MatroidSpec& spec,
                                        const ElementSet& s,
                                        QueryCounter* independence_queries) {
  std::vector<Element> out;
  for (Element e : spec.GroundSet()) {
    if (s.contains(e)) continue;
    if (independence_queries != nullptr) independence_queries->Add();
    if (spec.IsIndependent(s.With(e))) out.push_back(e);
  }
  return out;
}

std::vector<Element> RandomBaseSequence(const MatroidSpec& spec, Rng& rng,
                                        QueryCounter* independence_queries) {
  ElementSet s;
  std::vector<Element> order;
  for (;;) {
    std::vector<Element> feasible =
        FeasibleExtensions(spec, s, independence_queries);
    if (feasible.empty()) return order;
    const Element e = feasible[UniformIndex(rng, feasible.size())];
    s.insert(e);
    order.push_back(e);
  }
}

ElementSet RandomBase(const MatroidSpec& spec, Rng& rng,
                      QueryCounter* independence_queries) {
  return ElementSet::FromUnsorted(
      RandomBaseSequence(spec, rng, independence_queries));
}

MatroidSpec PadWithFreeElements(const MatroidSpec& spec, std::size_t count) {
  if (count == 0) return spec;
  const std::size_t n = spec.ground_size();
  ElementSet fresh;
  for (std::size_t i = 0; i < count; ++i) fresh.insert(static_cast<Element>(n + i));
  return std::visit(
      Overloaded{
          [&](const UniformMatroid& u) {
            return MatroidSpec::Partition({ElementSet::Range(n), fresh},
                                          {u.k, count});
          },
          [&](const PartitionMatroid& p) {
            auto blocks = p.blocks;
            auto caps = p.capacities;
            blocks.push_back(fresh);
            caps.push_back(count);
            return MatroidSpec::Partition(std::move(blocks), std::move(caps));
          },
          [&](const GraphicMatroid& g) {
            auto edges = g.edges;
            std::size_t v = g.num_vertices;
            for (std::size_t i = 0; i < count; ++i, v += 2) {
              edges.push_back({static_cast<std::uint32_t>(v),
                               static_cast<std::uint32_t>(v + 1)});
            }
            return MatroidSpec::Graphic(v, std::move(edges));
          },
          [&](const ContractionMatroid& c) {
            return PadWithFreeElements(*c.base, count).Contract(c.contracted);
          },
      },
      spec.variant());
}

}  // namespace wsub
