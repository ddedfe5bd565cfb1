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

#ifndef WSUB_ALGORITHMS_H_
#define WSUB_ALGORITHMS_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wsub/element_set.h"
#include "wsub/exchange.h"
#include "wsub/matroid.h"
#include "wsub/random.h"
#include "wsub/set_function.h"

namespace wsub {

struct IterationRecord {
  std::size_t index = 0;       // 1-based round number
  ElementSet candidate_base;   // M_i for RRG; feasible extensions otherwise
  Element chosen = 0;
  ElementSet solution;         // S_i
  double value = 0.0;          // f(S_i)
  // Running totals after this round.
  std::uint64_t value_queries = 0;
  std::uint64_t independence_queries = 0;
};

struct RunTrace {
  double initial_value = 0.0;  // f(empty)
  std::vector<IterationRecord> iterations;
  ElementSet final_set;
  double final_value = 0.0;
  std::uint64_t value_queries = 0;
  std::uint64_t independence_queries = 0;
  std::vector<std::string> solver_flags;

  // f(S_0), f(S_1), ..., f(S_k).
  std::vector<double> Trajectory() const;
};

// One JSON object per round: i, candidate_base, chosen, solution, value and
// the running query counts.
void WriteTraceJsonLines(const RunTrace& trace, std::ostream& out);
// iteration,chosen,value,value_queries_cum,independence_queries_cum with a
// leading row for the empty solution (chosen left blank).
void WriteTraceCsv(const RunTrace& trace, std::ostream& out);

// Residual Random Greedy. Round i evaluates f(S_{i-1} + u) for every u
// outside S_{i-1}, takes a maximum-weight base M_i of M / S_{i-1} under those
// marginals, and adds a uniformly random member of M_i.
//
// Exact cost for ground set size n and rank k:
//   value queries        1 + n k - k (k - 1) / 2
//   independence queries     n k - k (k - 1) / 2
RunTrace ResidualRandomGreedy(const ValueOracle& f, const MatroidSpec& spec,
                              Rng& rng);

// Adds the feasible element with the largest marginal each round (ties to
// the smaller id) until S is a base.
RunTrace StandardGreedy(const ValueOracle& f, const MatroidSpec& spec);

// The sequential random-base process, with f evaluated on every prefix
// (k + 1 value queries).
RunTrace RandomBaseline(const MatroidSpec& spec, const ValueOracle& f, Rng& rng);

enum class OptScope { kIndependentSets, kBases };

struct OptResult {
  ElementSet set;
  double value = 0.0;
};

// Exhaustive maximum of f over independent sets (or bases only), walking the
// subset lattice depth first and pruning dependent branches. Ties keep the
// first set in that order. Throws SizeError for ground sets above
// `max_ground_size`.
OptResult BruteForceOpt(const ValueOracle& f, const MatroidSpec& spec,
                        OptScope scope = OptScope::kIndependentSets,
                        std::size_t max_ground_size = 20);

// Runs RRG on the matroid extended by `k_prime` free elements and the
// objective extended by f(S) = f(S minus the new elements), for k + k_prime
// rounds. The returned final_set has the padding removed; iteration records
// keep the full extended trajectory.
RunTrace PaddedVariant(const ValueOracle& f, const MatroidSpec& spec,
                       std::size_t k_prime, Rng& rng);

struct AnalysisTrace {
  std::vector<ElementSet> opt_sets;         // OPT_0 ... OPT_k
  std::vector<Element> removed;             // g_i(u_i)
  std::vector<ExchangeMap> exchange_maps;   // g_i on M_i \ OPT_{i-1}
};

// RRG that also maintains OPT_i. Before u_i is drawn, g_i is the exchange map
// between M_i and OPT_{i-1} in M / S_{i-1}; then OPT_i = OPT_{i-1} - g_i(u_i),
// where members of M_i inside OPT_{i-1} map to themselves. The RunTrace is
// identical to ResidualRandomGreedy under the same generator state. Throws
// PreconditionError unless `opt` is a base and InternalError if an invariant
// breaks.
std::pair<RunTrace, AnalysisTrace> RrgWithAnalysis(const ValueOracle& f,
                                                   const MatroidSpec& spec,
                                                   const ElementSet& opt,
                                                   Rng& rng,
                                                   std::size_t max_ground_size = 20);

}  // namespace wsub

#endif  // WSUB_ALGORITHMS_H_
