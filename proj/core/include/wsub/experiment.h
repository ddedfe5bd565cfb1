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

#ifndef WSUB_EXPERIMENT_H_
#define WSUB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wsub/matroid.h"
#include "wsub/set_function.h"

namespace wsub {

enum class ExperimentKind {
  kLinregGraphic,
  kLinregPartition,
  kDppInterval,
  kLogisticOnehot,
  kFixtureVerify,
};

// "linreg-graphic", "linreg-partition", "dpp-interval", "logistic-onehot",
// "fixture-verify".
std::string ExperimentName(ExperimentKind kind);
// Throws InputError on an unknown name.
ExperimentKind ParseExperimentKind(const std::string& name);

// Size parameters mean different things per experiment:
//   linreg-*         n rows, p features (graphic: n vertices, p edges),
//                    num_blocks partition blocks
//   dpp-interval     n frames, p feature dimension, bandwidth, interval
//   logistic-onehot  n samples, p categorical variables (4 levels each)
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kLinregGraphic;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t n = 100;
  std::size_t p = 200;
  std::size_t num_blocks = 10;
  double bandwidth = 1.0;
  std::size_t interval = 25;
  double frame_step = 0.25;
  double ridge = 1e-6;
  std::size_t monte_carlo_runs = 500;
  std::size_t max_dpp_rank = 64;
  std::filesystem::path output_dir = "out";
  // 0 picks WSUB_THREADS or the hardware concurrency.
  std::size_t threads = 0;
  bool write_dat = false;

  // Throws InputError when a field is out of range.
  void Validate() const;
};

nlohmann::json ToJson(const ExperimentConfig& config);
// Fields missing from `doc` keep their values from `defaults`.
ExperimentConfig ConfigFromJson(const nlohmann::json& doc,
                                ExperimentConfig defaults = {});

struct RawRow {
  std::string experiment;
  std::string algorithm;  // rrg, greedy, random
  std::size_t trial = 0;
  std::size_t iteration = 0;
  double value = 0.0;
};

struct SummaryRow {
  std::string algorithm;  // rrg, greedy, random, ground_truth
  std::size_t iteration = 0;
  double mean = 0.0;
  double std = 0.0;
  std::size_t trials = 0;
};

struct TerminalRow {
  std::string algorithm;
  double mean = 0.0;
  double std = 0.0;
  std::size_t trials = 0;
};

struct ResultTable {
  std::vector<RawRow> rows;
  std::vector<SummaryRow> summary;
  // Per-trial normalized log-likelihood of the true support (linreg only).
  std::vector<double> ground_truth_per_trial;
  std::optional<double> ground_truth;
  std::vector<std::string> solver_flags;

  // Mean and spread of each algorithm's final value across trials.
  std::vector<TerminalRow> Terminal() const;
};

// Mean/std per (algorithm, iteration) over the trials that reach it, plus a
// ground_truth row when per-trial ground truth is present.
std::vector<SummaryRow> Summarize(const std::vector<RawRow>& rows,
                                  const std::vector<double>& ground_truth,
                                  std::size_t ground_truth_iteration);

// Generates each trial's instance from its derived seed and runs rrg,
// greedy and random on it. Trials run on a worker pool; the result does not
// depend on the number of workers or their scheduling. Does not touch the
// filesystem.
ResultTable RunExperiment(const ExperimentConfig& config);

// raw.csv, summary.csv, terminal.csv and (optionally) summary.dat under
// `dir`. Throws IoError when the directory cannot be written.
void WriteResultTable(const ResultTable& table, const std::filesystem::path& dir,
                      bool write_dat);

// One small instance with an exactly computable optimum.
struct Fixture {
  std::string name;
  OraclePtr oracle;
  MatroidSpec matroid = MatroidSpec::Uniform(0, 0);
  bool modular = false;
};

// Deterministic battery of coverage, modular, least-squares and DPP fixtures
// with n <= 12 and rank 2-4.
std::vector<Fixture> BuildFixtures(std::uint64_t seed);

struct FixtureOutcome {
  std::string name;
  std::size_t n = 0;
  std::size_t rank = 0;
  double opt_value = 0.0;
  ElementSet opt_set;
  GammaEstimate gamma;
  double bound_ratio = 0.0;  // (1 + 1/gamma)^-2
  double mean_value = 0.0;   // RRG Monte Carlo mean
  double standard_error = 0.0;
  std::size_t runs = 0;
  double greedy_value = 0.0;
  bool modular = false;
  bool passed = false;

  double mean_ratio() const { return opt_value > 0 ? mean_value / opt_value : 1.0; }
};

struct FixtureReport {
  std::vector<FixtureOutcome> outcomes;
  bool all_passed() const;
};

// For every fixture: brute-force OPT, restricted gamma, and the RRG mean over
// config.monte_carlo_runs seeds. A fixture passes when
// mean >= (1 + 1/gamma)^-2 OPT - 3 SE, and, for modular fixtures, greedy
// attains OPT.
FixtureReport VerifyFixtures(const ExperimentConfig& config);

nlohmann::json ToJson(const FixtureReport& report);

// Number of worker threads for `requested` (0 = automatic), capped by the
// WSUB_THREADS environment variable when it is set.
std::size_t ResolveThreadCount(std::size_t requested);

// Calls fn(t) for t in [0, count) on up to `threads` workers. The first
// exception thrown by any call is rethrown after all workers stop.
void ParallelFor(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& fn);

}  // namespace wsub

#endif  // WSUB_EXPERIMENT_H_
