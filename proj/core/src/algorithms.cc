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

#include "wsub/algorithms.h"

#include <functional>
#include <limits>

#include <nlohmann/json.hpp>

#include "wsub/csv.h"
#include "wsub/errors.h"

namespace wsub {
namespace {

// Counts the value queries of one run independently of f's global counter.
class RunCounter {
 public:
  explicit RunCounter(const ValueOracle& f) : f_(f) {}
  double operator()(const ElementSet& s) {
    ++count_;
    return f_.Evaluate(s);
  }
  std::uint64_t count() const { return count_; }

 private:
  const ValueOracle& f_;
  std::uint64_t count_ = 0;
};

void Finish(RunTrace& trace, const ValueOracle& f, std::uint64_t value_queries,
            std::uint64_t independence_queries, std::uint64_t warnings_before) {
  if (trace.iterations.empty()) {
    trace.final_value = trace.initial_value;
  } else {
    trace.final_set = trace.iterations.back().solution;
    trace.final_value = trace.iterations.back().value;
  }
  trace.value_queries = value_queries;
  trace.independence_queries = independence_queries;
  if (f.warning_count() > warnings_before) {
    trace.solver_flags = f.Warnings();
  }
}

// Called with (M / S_{i-1}, S_{i-1}, M_i) before u_i is drawn and returns a
// callback invoked with u_i after the draw.
using RoundHook = std::function<std::function<void(Element)>(
    const MatroidSpec&, const ElementSet&, const ElementSet&)>;

RunTrace RunResidualRandomGreedy(const ValueOracle& f, const MatroidSpec& spec,
                                 Rng& rng, const RoundHook& hook) {
  const std::uint64_t warnings_before = f.warning_count();
  const std::size_t n = spec.ground_size();
  const std::size_t k = spec.Rank();
  RunCounter eval(f);
  QueryCounter independence;

  RunTrace trace;
  ElementSet s;
  double f_s = eval(s);
  trace.initial_value = f_s;
  std::vector<double> with_u(n, 0.0);
  std::vector<double> weights(n, 0.0);
  for (std::size_t i = 1; i <= k; ++i) {
    const MatroidSpec residual = spec.Contract(s);
    for (Element u : residual.GroundSet()) {
      with_u[u] = eval(s.With(u));
      weights[u] = with_u[u] - f_s;
    }
    ElementSet candidates = MaxWeightBase(residual, weights, &independence);
    if (candidates.size() != k - i + 1) {
      throw InternalError("max-weight base of the residual matroid has size " +
                          std::to_string(candidates.size()) + ", expected " +
                          std::to_string(k - i + 1));
    }
    std::function<void(Element)> after_draw;
    if (hook) after_draw = hook(residual, s, candidates);
    const Element u = candidates[UniformIndex(rng, candidates.size())];
    if (after_draw) after_draw(u);
    s.insert(u);
    f_s = with_u[u];
    trace.iterations.push_back({i, std::move(candidates), u, s, f_s,
                                eval.count(), independence.count()});
  }
  Finish(trace, f, eval.count(), independence.count(), warnings_before);
  return trace;
}

// f(S) = inner(S restricted to ids below `original_size`).
class PaddedOracle final : public ValueOracle {
 public:
  PaddedOracle(const ValueOracle& inner, std::size_t padding)
      : ValueOracle(inner.ground_size() + padding), inner_(inner) {}

  std::vector<std::string> Warnings() const override { return inner_.Warnings(); }
  std::uint64_t warning_count() const override { return inner_.warning_count(); }

 protected:
  double EvaluateImpl(const ElementSet& s) const override {
    const std::size_t n = inner_.ground_size();
    if (s.empty() || s.max() < n) return inner_.Evaluate(s);
    ElementSet original;
    for (Element e : s) {
      if (e < n) original.insert(e);
    }
    return inner_.Evaluate(original);
  }

 private:
  const ValueOracle& inner_;
};

void EnumerateIndependent(const MatroidSpec& spec, ElementSet& current,
                          Element next,
                          const std::function<void(const ElementSet&)>& visit) {
  visit(current);
  for (Element e = next; e < spec.ground_size(); ++e) {
    current.insert(e);
    if (spec.IsIndependent(current)) {
      EnumerateIndependent(spec, current, e + 1, visit);
    }
    current.erase(e);
  }
}

}  // namespace

std::vector<double> RunTrace::Trajectory() const {
  std::vector<double> values{initial_value};
  for (const IterationRecord& r : iterations) values.push_back(r.value);
  return values;
}

void WriteTraceJsonLines(const RunTrace& trace, std::ostream& out) {
  auto ids = [](const ElementSet& s) {
    return std::vector<Element>(s.begin(), s.end());
  };
  for (const IterationRecord& r : trace.iterations) {
    nlohmann::json line{
        {"i", r.index},
        {"candidate_base", ids(r.candidate_base)},
        {"chosen", r.chosen},
        {"solution", ids(r.solution)},
        {"value", r.value},
        {"value_queries", r.value_queries},
        {"independence_queries", r.independence_queries},
    };
    out << line.dump() << '\n';
  }
}

void WriteTraceCsv(const RunTrace& trace, std::ostream& out) {
  out << "iteration,chosen,value,value_queries_cum,independence_queries_cum\n";
  out << "0,," << FormatDouble(trace.initial_value) << ",1,0\n";
  for (const IterationRecord& r : trace.iterations) {
    out << r.index << ',' << r.chosen << ',' << FormatDouble(r.value) << ','
        << r.value_queries << ',' << r.independence_queries << '\n';
  }
}

RunTrace ResidualRandomGreedy(const ValueOracle& f, const MatroidSpec& spec,
                              Rng& rng) {
  return RunResidualRandomGreedy(f, spec, rng, nullptr);
}

RunTrace StandardGreedy(const ValueOracle& f, const MatroidSpec& spec) {
  const std::uint64_t warnings_before = f.warning_count();
  RunCounter eval(f);
  QueryCounter independence;
  RunTrace trace;
  ElementSet s;
  double f_s = eval(s);
  trace.initial_value = f_s;
  for (std::size_t i = 1;; ++i) {
    std::vector<Element> feasible = FeasibleExtensions(spec, s, &independence);
    if (feasible.empty()) break;
    Element best = feasible.front();
    double best_value = -std::numeric_limits<double>::infinity();
    for (Element u : feasible) {
      const double value = eval(s.With(u));
      if (value > best_value) {
        best_value = value;
        best = u;
      }
    }
    s.insert(best);
    f_s = best_value;
    trace.iterations.push_back({i, ElementSet::FromUnsorted(std::move(feasible)),
                                best, s, f_s, eval.count(),
                                independence.count()});
  }
  Finish(trace, f, eval.count(), independence.count(), warnings_before);
  return trace;
}

RunTrace RandomBaseline(const MatroidSpec& spec, const ValueOracle& f, Rng& rng) {
  const std::uint64_t warnings_before = f.warning_count();
  RunCounter eval(f);
  QueryCounter independence;
  const std::vector<Element> order = RandomBaseSequence(spec, rng, &independence);
  RunTrace trace;
  ElementSet s;
  trace.initial_value = eval(s);
  for (std::size_t i = 0; i < order.size(); ++i) {
    s.insert(order[i]);
    // The candidate set is not tracked by the sequential process itself.
    trace.iterations.push_back({i + 1, ElementSet{}, order[i], s, eval(s),
                                eval.count(), independence.count()});
  }
  Finish(trace, f, eval.count(), independence.count(), warnings_before);
  return trace;
}

OptResult BruteForceOpt(const ValueOracle& f, const MatroidSpec& spec,
                        OptScope scope, std::size_t max_ground_size) {
  if (spec.ground_size() > max_ground_size) {
    throw SizeError("brute-force optimum: ground set of size " +
                    std::to_string(spec.ground_size()) + " exceeds " +
                    std::to_string(max_ground_size));
  }
  const std::size_t rank = spec.Rank();
  OptResult best;
  bool found = false;
  ElementSet current;
  EnumerateIndependent(spec, current, 0, [&](const ElementSet& s) {
    if (scope == OptScope::kBases && s.size() != rank) return;
    const double value = f.Evaluate(s);
    if (!found || value > best.value) {
      best = {s, value};
      found = true;
    }
  });
  return best;
}

RunTrace PaddedVariant(const ValueOracle& f, const MatroidSpec& spec,
                       std::size_t k_prime, Rng& rng) {
  if (k_prime == 0) return ResidualRandomGreedy(f, spec, rng);
  const PaddedOracle padded_f(f, k_prime);
  const MatroidSpec padded_spec = PadWithFreeElements(spec, k_prime);
  RunTrace trace = ResidualRandomGreedy(padded_f, padded_spec, rng);
  const auto n = static_cast<Element>(spec.ground_size());
  ElementSet stripped;
  for (Element e : trace.final_set) {
    if (e < n) stripped.insert(e);
  }
  trace.final_set = std::move(stripped);
  return trace;
}

std::pair<RunTrace, AnalysisTrace> RrgWithAnalysis(const ValueOracle& f,
                                                   const MatroidSpec& spec,
                                                   const ElementSet& opt,
                                                   Rng& rng,
                                                   std::size_t max_ground_size) {
  if (spec.ground_size() > max_ground_size) {
    throw SizeError("analysis mode: ground set of size " +
                    std::to_string(spec.ground_size()) + " exceeds " +
                    std::to_string(max_ground_size));
  }
  if (!spec.IsBase(opt)) {
    throw PreconditionError("analysis mode: OPT " + opt.ToString() +
                            " is not a base");
  }
  AnalysisTrace analysis;
  analysis.opt_sets.push_back(opt);
  RoundHook hook = [&](const MatroidSpec& residual, const ElementSet& s,
                       const ElementSet& candidates) {
    const ElementSet& opt_prev = analysis.opt_sets.back();
    ExchangeMap g = ComputeExchangeMap(residual, candidates, opt_prev);
    analysis.exchange_maps.push_back(g);
    return [&, g = std::move(g), s](Element u) {
      const ElementSet& current = analysis.opt_sets.back();
      Element removed = u;
      if (!current.contains(u)) {
        auto image = g.Image(u);
        if (!image) throw InternalError("exchange map has no image for chosen u");
        removed = *image;
      }
      ElementSet next = current.Without(removed);
      if (!spec.IsBase(s.With(u).Union(next))) {
        throw InternalError("S_i united with OPT_i is not a base");
      }
      analysis.removed.push_back(removed);
      analysis.opt_sets.push_back(std::move(next));
    };
  };
  RunTrace trace = RunResidualRandomGreedy(f, spec, rng, hook);
  return {std::move(trace), std::move(analysis)};
}

}  // namespace wsub
