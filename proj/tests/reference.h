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

// Independent reference implementations used as test oracles. None of these
// call into the library's matroid or objective code paths they check.

#ifndef WSUB_TESTS_REFERENCE_H_
#define WSUB_TESTS_REFERENCE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "wsub/element_set.h"
#include "wsub/matroid.h"
#include "wsub/random.h"
#include "wsub/set_function.h"

namespace wsub::testing {

// Connected components of the graph on `num_vertices` vertices with the
// given edges, counted by breadth-first search.
inline std::size_t CountComponents(std::size_t num_vertices,
                                   const std::vector<GraphEdge>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(num_vertices);
  for (const GraphEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(num_vertices, false);
  std::size_t components = 0;
  for (std::size_t s = 0; s < num_vertices; ++s) {
    if (seen[s]) continue;
    ++components;
    std::queue<std::uint32_t> q;
    q.push(static_cast<std::uint32_t>(s));
    seen[s] = true;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }
  return components;
}

// An edge set is a forest iff |E| = |V| - components on its own vertices.
inline bool IsForest(const GraphicMatroid& g, const ElementSet& s) {
  std::vector<GraphEdge> edges;
  std::vector<std::uint32_t> vertices;
  for (Element e : s) {
    edges.push_back(g.edges[e]);
    vertices.push_back(g.edges[e].u);
    vertices.push_back(g.edges[e].v);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::map<std::uint32_t, std::uint32_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    index[vertices[i]] = static_cast<std::uint32_t>(i);
  }
  for (GraphEdge& e : edges) e = {index[e.u], index[e.v]};
  return edges.size() + CountComponents(vertices.size(), edges) == vertices.size();
}

inline bool ReferenceIndependent(const MatroidSpec& spec, const ElementSet& s) {
  const auto& v = spec.variant();
  if (const auto* u = std::get_if<UniformMatroid>(&v)) return s.size() <= u->k;
  if (const auto* p = std::get_if<PartitionMatroid>(&v)) {
    for (std::size_t b = 0; b < p->blocks.size(); ++b) {
      std::size_t count = 0;
      for (Element e : p->blocks[b]) count += s.contains(e) ? 1 : 0;
      if (count > p->capacities[b]) return false;
    }
    return true;
  }
  if (const auto* g = std::get_if<GraphicMatroid>(&v)) return IsForest(*g, s);
  const auto& c = std::get<ContractionMatroid>(v);
  if (s.Intersects(c.contracted)) return false;
  return ReferenceIndependent(*c.base, s.Union(c.contracted));
}

// Every subset of the ground set (ids 0..n-1, n <= 20) as a bitmask.
inline std::vector<std::uint64_t> AllMasks(std::size_t n) {
  std::vector<std::uint64_t> out(std::size_t{1} << n);
  std::iota(out.begin(), out.end(), std::uint64_t{0});
  return out;
}

// Bases by filtering all subsets; no pruning.
inline std::vector<ElementSet> EnumerateBases(const MatroidSpec& spec) {
  const std::size_t n = spec.ground_size();
  std::vector<ElementSet> independent;
  std::size_t best = 0;
  for (std::uint64_t m : AllMasks(n)) {
    ElementSet s = ElementSet::FromMask(m);
    if (ReferenceIndependent(spec, s)) {
      best = std::max(best, s.size());
      independent.push_back(std::move(s));
    }
  }
  std::vector<ElementSet> bases;
  for (auto& s : independent) {
    if (s.size() == best) bases.push_back(s);
  }
  return bases;
}

// max f over independent sets (or bases), checking every subset.
inline double UnprunedOpt(const ValueOracle& f, const MatroidSpec& spec,
                          bool bases_only) {
  double best = -INFINITY;
  const std::size_t rank = spec.Rank();
  for (std::uint64_t m : AllMasks(spec.ground_size())) {
    ElementSet s = ElementSet::FromMask(m);
    if (bases_only && s.size() != rank) continue;
    if (!ReferenceIndependent(spec, s)) continue;
    best = std::max(best, f.Evaluate(s));
  }
  return best;
}

// |y|^2 - |y - X_S b|^2 with b from the normal equations solved by an
// eigenvalue pseudo-inverse of X_S^T X_S.
inline double NormalEquationsValue(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                   const ElementSet& s) {
  if (s.empty()) return 0.0;
  Eigen::MatrixXd xs(x.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) xs.col(j) = x.col(s[j]);
  const Eigen::MatrixXd gram = xs.transpose() * xs;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd evals = eig.eigenvalues();
  const double cutoff = 1e-12 * std::max(1.0, evals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals[i] > cutoff) inv[i] = 1.0 / evals[i];
  }
  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  const Eigen::VectorXd beta = pinv * (xs.transpose() * y);
  return y.squaredNorm() - (y - xs * beta).squaredNorm();
}

// Laplace expansion along the first row.
inline double CofactorDeterminant(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    det += ((j % 2 == 0) ? 1.0 : -1.0) * a(0, j) * CofactorDeterminant(minor);
  }
  return det;
}

// Max-weight base of `spec` restricted to elements outside `taken`, by a
// separate greedy scan using ReferenceIndependent on taken + candidate.
inline ElementSet ReferenceResidualBase(const MatroidSpec& spec,
                                        const ElementSet& taken,
                                        const std::vector<double>& weights) {
  std::vector<Element> order;
  for (Element e = 0; e < spec.ground_size(); ++e) {
    if (!taken.contains(e)) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return weights[a] > weights[b]; });
  ElementSet chosen;
  for (Element e : order) {
    if (ReferenceIndependent(spec, taken.Union(chosen).With(e))) chosen.insert(e);
  }
  return chosen;
}

// Exact output distribution of Residual Random Greedy, by enumerating every
// branch of the random choices.
inline std::map<ElementSet, double> ExactRrgDistribution(const ValueOracle& f,
                                                         const MatroidSpec& spec) {
  std::map<ElementSet, double> dist;
  std::function<void(const ElementSet&, double)> recurse =
      [&](const ElementSet& s, double prob) {
        if (s.size() == spec.Rank()) {
          dist[s] += prob;
          return;
        }
        const double fs = f.Evaluate(s);
        std::vector<double> w(spec.ground_size(), 0.0);
        for (Element e = 0; e < spec.ground_size(); ++e) {
          if (!s.contains(e)) w[e] = f.Evaluate(s.With(e)) - fs;
        }
        const ElementSet m = ReferenceResidualBase(spec, s, w);
        for (Element u : m) recurse(s.With(u), prob / static_cast<double>(m.size()));
      };
  recurse(ElementSet{}, 1.0);
  return dist;
}

inline double ExactRrgExpectation(const ValueOracle& f, const MatroidSpec& spec) {
  double e = 0.0;
  for (const auto& [s, p] : ExactRrgDistribution(f, spec)) e += p * f.Evaluate(s);
  return e;
}

// Small random matroid of kind 0 (uniform), 1 (partition) or 2 (graphic)
// with ground set size n.
inline MatroidSpec RandomSmallMatroid(Rng& rng, std::size_t n, int kind) {
  if (kind == 0) return MatroidSpec::Uniform(n, 1 + UniformIndex(rng, n));
  if (kind == 1) {
    const std::size_t num_blocks = 1 + UniformIndex(rng, std::min<std::size_t>(n, 4));
    std::vector<ElementSet> blocks(num_blocks);
    for (Element e = 0; e < n; ++e) {
      blocks[e < num_blocks ? e : UniformIndex(rng, num_blocks)].insert(e);
    }
    std::vector<std::size_t> caps;
    for (const auto& b : blocks) caps.push_back(UniformIndex(rng, b.size() + 1));
    return MatroidSpec::Partition(std::move(blocks), std::move(caps));
  }
  const std::size_t vertices = 2 + UniformIndex(rng, 5);
  std::vector<GraphEdge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<std::uint32_t>(UniformIndex(rng, vertices)),
                     static_cast<std::uint32_t>(UniformIndex(rng, vertices))});
  }
  return MatroidSpec::Graphic(vertices, std::move(edges));
}

}  // namespace wsub::testing

#endif  // WSUB_TESTS_REFERENCE_H_
