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

#ifndef WSUB_MATROID_H_
#define WSUB_MATROID_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wsub/element_set.h"
#include "wsub/random.h"

namespace wsub {

// Thread-safe tally of oracle calls.
class QueryCounter {
 public:
  void Add(std::uint64_t k = 1) { count_.fetch_add(k, std::memory_order_relaxed); }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }
  void Reset() { count_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

struct UniformMatroid {
  std::size_t n = 0;
  std::size_t k = 0;
};

struct PartitionMatroid {
  std::vector<ElementSet> blocks;
  std::vector<std::size_t> capacities;
  // block_of[e] is the index of the block holding element e.
  std::vector<std::uint32_t> block_of;
};

struct GraphEdge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Element i is edges[i]. Parallel edges and self-loops are allowed; a
// self-loop is a dependent singleton.
struct GraphicMatroid {
  std::size_t num_vertices = 0;
  std::vector<GraphEdge> edges;
};

class MatroidSpec;

// M / contracted, kept as a view over the base spec. Contracted elements
// keep their ids and behave as loops.
struct ContractionMatroid {
  std::shared_ptr<const MatroidSpec> base;
  ElementSet contracted;
};

enum class MatroidKind { kUniform, kPartition, kGraphic, kContraction };

// Immutable, declarative matroid answering independence and rank queries.
// Element ids range over 0..ground_size()-1.
class MatroidSpec {
 public:
  using Variant = std::variant<UniformMatroid, PartitionMatroid,
                               GraphicMatroid, ContractionMatroid>;

  static MatroidSpec Uniform(std::size_t n, std::size_t k);
  // Blocks must be disjoint and cover 0..n-1, one capacity per block.
  static MatroidSpec Partition(std::vector<ElementSet> blocks,
                               std::vector<std::size_t> capacities);
  static MatroidSpec Graphic(std::size_t num_vertices,
                             std::vector<GraphEdge> edges);

  MatroidKind kind() const;
  const Variant& variant() const { return variant_; }

  // Size of the id range. For a contraction this is the base's range; the
  // contracted ids are not part of GroundSet().
  std::size_t ground_size() const { return n_; }
  ElementSet GroundSet() const;
  std::size_t Rank() const { return rank_; }
  std::size_t RankOf(const ElementSet& s) const;

  // Throws InputError on ids >= ground_size(). A set meeting the contracted
  // elements of a contraction is dependent.
  bool IsIndependent(const ElementSet& s) const;
  bool IsBase(const ElementSet& s) const;

  // M / s. Throws PreconditionError if s is dependent. Contracting the empty
  // set yields a spec equivalent to this one on every query.
  MatroidSpec Contract(const ElementSet& s) const;

  // Serializes uniform, partition and graphic specs. Contractions are
  // runtime-only and throw InputError.
  nlohmann::json ToJson() const;
  static MatroidSpec FromJson(const nlohmann::json& doc);

 private:
  explicit MatroidSpec(Variant v);
  void CheckRange(const ElementSet& s) const;

  Variant variant_;
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
};

// Base maximizing total weight, by the matroid greedy scan over elements in
// non-increasing weight order (ties by smaller id). Always returns a base,
// taking negative-weight elements when they are needed to complete it.
// `weights` is indexed by element id and must cover ground_size().
// Each scanned element costs one independence query.
ElementSet MaxWeightBase(const MatroidSpec& spec, std::span<const double> weights,
                         QueryCounter* independence_queries = nullptr);

// Grows S from the empty set by repeatedly adding a uniformly random element
// among those keeping S independent, until S is a base. This is uniform over
// bases only for symmetric matroids such as uniform ones; in general it is
// not a uniform base sampler.
ElementSet RandomBase(const MatroidSpec& spec, Rng& rng,
                      QueryCounter* independence_queries = nullptr);

// RandomBase's elements in the order they were added. Consumes the
// generator identically.
std::vector<Element> RandomBaseSequence(const MatroidSpec& spec, Rng& rng,
                                        QueryCounter* independence_queries = nullptr);

// Elements outside `s` (and outside any contracted set) whose addition keeps
// `s` independent, ascending.
std::vector<Element> FeasibleExtensions(const MatroidSpec& spec,
                                        const ElementSet& s,
                                        QueryCounter* independence_queries = nullptr);

// Adds `count` coloops with ids ground_size()..ground_size()+count-1; a set's
// independence is decided by its intersection with the old ground set.
MatroidSpec PadWithFreeElements(const MatroidSpec& spec, std::size_t count);

}  // namespace wsub

#endif  // WSUB_MATROID_H_
