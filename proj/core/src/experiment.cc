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

#include "wsub/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "wsub/algorithms.h"
#include "wsub/csv.h"
#include "wsub/datagen.h"
#include "wsub/errors.h"
#include "wsub/objectives.h"
#include "wsub/random.h"
#include "wsub/stats.h"

namespace wsub {
namespace {

constexpr const char* kAlgorithms[] = {"rrg", "greedy", "random"};

struct TrialResult {
  std::vector<RawRow> rows;
  std::optional<double> ground_truth;
  std::size_t ground_truth_size = 0;
  std::vector<std::string> flags;
};

struct TrialInstance {
  OraclePtr oracle;
  MatroidSpec matroid = MatroidSpec::Uniform(0, 0);
  std::optional<double> ground_truth;
  std::size_t ground_truth_size = 0;
};

TrialInstance MakeTrialInstance(const ExperimentConfig& config, Rng& rng) {
  TrialInstance t;
  switch (config.experiment) {
    case ExperimentKind::kLinregGraphic:
    case ExperimentKind::kLinregPartition: {
      MatroidSpec matroid =
          config.experiment == ExperimentKind::kLinregGraphic
              ? RandomGraphicMatroid(config.n, config.p, rng)
              : RandomPartitionMatroid(config.p, config.num_blocks, rng);
      LinRegInstance inst =
          MakeLinRegInstance(config.n, config.p, std::move(matroid), rng);
      t.ground_truth = inst.ground_truth_value;
      t.ground_truth_size = inst.support.size();
      t.matroid = std::move(inst.matroid);
      t.oracle = LeastSquaresLoglik(std::move(inst.problem));
      break;
    }
    case ExperimentKind::kDppInterval: {
      auto frames = SyntheticFrames(config.n, config.p, config.frame_step, rng);
      t.matroid = IntervalPartitionMatroid(config.n, config.interval);
      if (t.matroid.Rank() > config.max_dpp_rank) {
        throw InputError("dpp-interval: rank " + std::to_string(t.matroid.Rank()) +
                         " exceeds max_dpp_rank " +
                         std::to_string(config.max_dpp_rank));
      }
      t.oracle = DppDeterminantOracle(GaussianGram(frames, config.bandwidth));
      break;
    }
    case ExperimentKind::kLogisticOnehot: {
      OneHotInstance inst =
          MakeOneHotLogistic(config.n, config.p, 4, config.ridge, rng);
      t.matroid = std::move(inst.matroid);
      t.oracle = LogisticLoglikOracle(std::move(inst.problem));
      break;
    }
    case ExperimentKind::kFixtureVerify:
      throw InputError("fixture-verify has no trial instances");
  }
  return t;
}

TrialResult RunTrial(const ExperimentConfig& config, std::size_t trial) {
  const std::uint64_t seed = DeriveSeed(config.master_seed, trial);
  Rng instance_rng(seed);
  TrialInstance inst = MakeTrialInstance(config, instance_rng);

  Rng rrg_rng(DeriveSeed(seed, 1));
  Rng random_rng(DeriveSeed(seed, 2));
  const RunTrace traces[] = {
      ResidualRandomGreedy(*inst.oracle, inst.matroid, rrg_rng),
      StandardGreedy(*inst.oracle, inst.matroid),
      RandomBaseline(inst.matroid, *inst.oracle, random_rng),
  };
  TrialResult result;
  const std::string experiment = ExperimentName(config.experiment);
  for (std::size_t a = 0; a < 3; ++a) {
    const auto values = traces[a].Trajectory();
    for (std::size_t it = 0; it < values.size(); ++it) {
      result.rows.push_back({experiment, kAlgorithms[a], trial, it, values[it]});
    }
  }
  result.ground_truth = inst.ground_truth;
  result.ground_truth_size = inst.ground_truth_size;
  if (inst.oracle->warning_count() > 0) {
    for (auto& w : inst.oracle->Warnings()) {
      result.flags.push_back("trial " + std::to_string(trial) + ": " + w);
    }
  }
  return result;
}

std::string AlgorithmSortKey(const std::string& name) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (name == kAlgorithms[i]) return std::to_string(i);
  }
  return "9" + name;
}

void EnsureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

}  // namespace

std::string ExperimentName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kLinregGraphic:
      return "linreg-graphic";
    case ExperimentKind::kLinregPartition:
      return "linreg-partition";
    case ExperimentKind::kDppInterval:
      return "dpp-interval";
    case ExperimentKind::kLogisticOnehot:
      return "logistic-onehot";
    case ExperimentKind::kFixtureVerify:
      return "fixture-verify";
  }
  return "unknown";
}

ExperimentKind ParseExperimentKind(const std::string& name) {
  for (auto kind : {ExperimentKind::kLinregGraphic, ExperimentKind::kLinregPartition,
                    ExperimentKind::kDppInterval, ExperimentKind::kLogisticOnehot,
                    ExperimentKind::kFixtureVerify}) {
    if (ExperimentName(kind) == name) return kind;
  }
  throw InputError("unknown experiment '" + name + "'");
}

void ExperimentConfig::Validate() const {
  if (trials < 1) throw InputError("trials must be at least 1");
  if (experiment == ExperimentKind::kFixtureVerify) {
    if (monte_carlo_runs < 2) throw InputError("monte_carlo_runs must be >= 2");
    return;
  }
  if (n < 1 || p < 1) throw InputError("n and p must be positive");
  switch (experiment) {
    case ExperimentKind::kLinregGraphic:
      if (n < 2) throw InputError("linreg-graphic needs n >= 2 vertices");
      break;
    case ExperimentKind::kLinregPartition:
      if (num_blocks < 1) throw InputError("blocks must be at least 1");
      break;
    case ExperimentKind::kDppInterval:
      if (!(bandwidth > 0.0)) throw InputError("bandwidth must be positive");
      if (interval < 1) throw InputError("interval must be at least 1");
      if ((n + interval - 1) / interval > max_dpp_rank) {
        throw InputError("dpp-interval rank ceil(n / interval) exceeds " +
                         std::to_string(max_dpp_rank));
      }
      break;
    case ExperimentKind::kLogisticOnehot:
      if (ridge < 0.0) throw InputError("ridge must be non-negative");
      break;
    case ExperimentKind::kFixtureVerify:
      break;
  }
}

nlohmann::json ToJson(const ExperimentConfig& c) {
  return nlohmann::json{
      {"experiment", ExperimentName(c.experiment)},
      {"trials", c.trials},
      {"seed", c.master_seed},
      {"n", c.n},
      {"p", c.p},
      {"blocks", c.num_blocks},
      {"bandwidth", c.bandwidth},
      {"interval", c.interval},
      {"frame_step", c.frame_step},
      {"ridge", c.ridge},
      {"monte_carlo_runs", c.monte_carlo_runs},
      {"max_dpp_rank", c.max_dpp_rank},
      {"out", c.output_dir.string()},
      {"threads", c.threads},
      {"dat", c.write_dat},
  };
}

ExperimentConfig ConfigFromJson(const nlohmann::json& doc,
                                ExperimentConfig c) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "experiment") {
        c.experiment = ParseExperimentKind(value.get<std::string>());
      } else if (key == "trials") {
        c.trials = value.get<std::size_t>();
      } else if (key == "seed") {
        c.master_seed = value.get<std::uint64_t>();
      } else if (key == "n") {
        c.n = value.get<std::size_t>();
      } else if (key == "p") {
        c.p = value.get<std::size_t>();
      } else if (key == "blocks") {
        c.num_blocks = value.get<std::size_t>();
      } else if (key == "bandwidth") {
        c.bandwidth = value.get<double>();
      } else if (key == "interval") {
        c.interval = value.get<std::size_t>();
      } else if (key == "frame_step") {
        c.frame_step = value.get<double>();
      } else if (key == "ridge") {
        c.ridge = value.get<double>();
      } else if (key == "monte_carlo_runs") {
        c.monte_carlo_runs = value.get<std::size_t>();
      } else if (key == "max_dpp_rank") {
        c.max_dpp_rank = value.get<std::size_t>();
      } else if (key == "out") {
        c.output_dir = value.get<std::string>();
      } else if (key == "threads") {
        c.threads = value.get<std::size_t>();
      } else if (key == "dat") {
        c.write_dat = value.get<bool>();
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  return c;
}

std::vector<SummaryRow> Summarize(const std::vector<RawRow>& rows,
                                  const std::vector<double>& ground_truth,
                                  std::size_t ground_truth_iteration) {
  // Values are ordered by trial so the result does not depend on row order.
  std::map<std::pair<std::string, std::size_t>, std::map<std::size_t, double>>
      groups;
  std::map<std::string, std::string> names;
  for (const RawRow& r : rows) {
    const std::string key = AlgorithmSortKey(r.algorithm);
    groups[{key, r.iteration}][r.trial] = r.value;
    names[key] = r.algorithm;
  }
  std::vector<SummaryRow> out;
  for (const auto& [key, by_trial] : groups) {
    std::vector<double> values;
    for (const auto& [trial, v] : by_trial) values.push_back(v);
    out.push_back({names[key.first], key.second, Mean(values), SampleStd(values),
                   values.size()});
  }
  if (!ground_truth.empty()) {
    out.push_back({"ground_truth", ground_truth_iteration, Mean(ground_truth),
                   SampleStd(ground_truth), ground_truth.size()});
  }
  return out;
}

std::vector<TerminalRow> ResultTable::Terminal() const {
  // rows are grouped by trial and ordered by iteration within each run.
  std::map<std::string, std::map<std::size_t, double>> last;
  for (const RawRow& r : rows) last[AlgorithmSortKey(r.algorithm)][r.trial] = r.value;
  std::vector<TerminalRow> out;
  for (const auto& [key, by_trial] : last) {
    std::vector<double> values;
    for (const auto& [trial, v] : by_trial) values.push_back(v);
    std::string name = key;
    for (const RawRow& r : rows) {
      if (AlgorithmSortKey(r.algorithm) == key) {
        name = r.algorithm;
        break;
      }
    }
    out.push_back({name, Mean(values), SampleStd(values), values.size()});
  }
  return out;
}

ResultTable RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  if (config.experiment == ExperimentKind::kFixtureVerify) {
    throw InputError("fixture-verify runs through VerifyFixtures");
  }
  std::vector<TrialResult> trials(config.trials);
  ParallelFor(config.trials, ResolveThreadCount(config.threads),
              [&](std::size_t t) { trials[t] = RunTrial(config, t); });

  ResultTable table;
  std::size_t gt_iteration = 0;
  for (TrialResult& t : trials) {
    table.rows.insert(table.rows.end(), t.rows.begin(), t.rows.end());
    if (t.ground_truth) {
      table.ground_truth_per_trial.push_back(*t.ground_truth);
      gt_iteration = std::max(gt_iteration, t.ground_truth_size);
    }
    table.solver_flags.insert(table.solver_flags.end(), t.flags.begin(),
                              t.flags.end());
  }
  if (!table.ground_truth_per_trial.empty()) {
    table.ground_truth = Mean(table.ground_truth_per_trial);
  }
  table.summary = Summarize(table.rows, table.ground_truth_per_trial, gt_iteration);
  return table;
}

void WriteResultTable(const ResultTable& table, const std::filesystem::path& dir,
                      bool write_dat) {
  EnsureDirectory(dir);
  CsvTable raw{{"experiment", "algorithm", "trial", "iteration", "value"}, {}};
  for (const RawRow& r : table.rows) {
    raw.rows.push_back({r.experiment, r.algorithm, std::to_string(r.trial),
                        std::to_string(r.iteration), FormatDouble(r.value)});
  }
  WriteCsv(dir / "raw.csv", raw);

  CsvTable summary{{"algorithm", "iteration", "mean", "std", "trials"}, {}};
  for (const SummaryRow& s : table.summary) {
    summary.rows.push_back({s.algorithm, std::to_string(s.iteration),
                            FormatDouble(s.mean), FormatDouble(s.std),
                            std::to_string(s.trials)});
  }
  WriteCsv(dir / "summary.csv", summary);

  CsvTable terminal{{"algorithm", "mean", "std", "trials"}, {}};
  for (const TerminalRow& t : table.Terminal()) {
    terminal.rows.push_back({t.algorithm, FormatDouble(t.mean), FormatDouble(t.std),
                             std::to_string(t.trials)});
  }
  WriteCsv(dir / "terminal.csv", terminal);

  if (write_dat) {
    std::ofstream dat(dir / "summary.dat");
    if (!dat) throw IoError("cannot write " + (dir / "summary.dat").string());
    std::string current;
    for (const SummaryRow& s : table.summary) {
      if (s.algorithm != current) {
        if (!current.empty()) dat << "\n\n";
        dat << "# " << s.algorithm << "\n# iteration mean std\n";
        current = s.algorithm;
      }
      dat << s.iteration << ' ' << FormatDouble(s.mean) << ' '
          << FormatDouble(s.std) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

OraclePtr RandomCoverage(std::size_t n, std::size_t universe, Rng& rng) {
  std::vector<ElementSet> sets(n);
  for (auto& s : sets) {
    for (std::size_t item = 0; item < universe; ++item) {
      if (UniformUnit(rng) < 0.3) s.insert(static_cast<Element>(item));
    }
    if (s.empty()) s.insert(static_cast<Element>(UniformIndex(rng, universe)));
  }
  std::vector<double> weights(universe);
  for (double& w : weights) w = 0.5 + UniformUnit(rng);
  return MakeCoverageFunction(universe, std::move(sets), std::move(weights));
}

OraclePtr RandomModular(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = 0.1 + UniformUnit(rng);
  return std::make_shared<ModularFunction>(std::move(w));
}

OraclePtr RandomLeastSquares(const MatroidSpec& matroid, Rng& rng) {
  const std::size_t p = matroid.ground_size();
  LinRegInstance inst = MakeLinRegInstance(20, p, matroid, rng,
                                           {.alpha = 0.5, .sigma2 = 1.0});
  return LeastSquaresLoglik(std::move(inst.problem));
}

// Graphic matroid on 5 vertices with 8 random edges and rank 2..4.
MatroidSpec SmallGraphic(Rng& rng) {
  for (;;) {
    MatroidSpec g = RandomGraphicMatroid(5, 8, rng);
    if (g.Rank() >= 2 && g.Rank() <= 4) return g;
  }
}

MatroidSpec SmallPartition(std::vector<std::size_t> sizes,
                           std::vector<std::size_t> caps) {
  std::vector<ElementSet> blocks;
  Element next = 0;
  for (std::size_t size : sizes) {
    ElementSet b;
    for (std::size_t i = 0; i < size; ++i) b.insert(next++);
    blocks.push_back(std::move(b));
  }
  return MatroidSpec::Partition(std::move(blocks), std::move(caps));
}

}  // namespace

std::vector<Fixture> BuildFixtures(std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, 0xf1));
  std::vector<Fixture> out;
  auto add = [&](std::string name, OraclePtr f, MatroidSpec m, bool modular) {
    out.push_back({std::move(name), std::move(f), std::move(m), modular});
  };
  add("coverage/uniform(8,3)", RandomCoverage(8, 15, rng),
      MatroidSpec::Uniform(8, 3), false);
  add("coverage/uniform(12,4)", RandomCoverage(12, 20, rng),
      MatroidSpec::Uniform(12, 4), false);
  add("coverage/partition(4+3+3;1,1,1)", RandomCoverage(10, 15, rng),
      SmallPartition({4, 3, 3}, {1, 1, 1}), false);
  {
    MatroidSpec g = SmallGraphic(rng);
    add("coverage/graphic(5v,8e)", RandomCoverage(8, 15, rng), std::move(g), false);
  }
  add("modular/uniform(6,2)", RandomModular(6, rng), MatroidSpec::Uniform(6, 2),
      true);
  add("modular/partition(5+4;1,1)", RandomModular(9, rng),
      SmallPartition({5, 4}, {1, 1}), true);
  {
    MatroidSpec g = SmallGraphic(rng);
    add("modular/graphic(5v,8e)", RandomModular(8, rng), std::move(g), true);
  }
  {
    MatroidSpec m = MatroidSpec::Uniform(8, 3);
    add("least-squares/uniform(8,3)", RandomLeastSquares(m, rng), m, false);
  }
  {
    MatroidSpec m = SmallPartition({4, 3, 3}, {2, 1, 1});
    add("least-squares/partition(4+3+3;2,1,1)", RandomLeastSquares(m, rng), m,
        false);
  }
  {
    MatroidSpec g = SmallGraphic(rng);
    add("least-squares/graphic(5v,8e)", RandomLeastSquares(g, rng), g, false);
  }
  {
    MatroidSpec m = MatroidSpec::Uniform(12, 2);
    add("least-squares/uniform(12,2)", RandomLeastSquares(m, rng), m, false);
  }
  {
    auto frames = SyntheticFrames(12, 4, 0.3, rng);
    add("dpp/interval(12,4)",
        DppDeterminantOracle(GaussianGram(frames, 1.0), /*normalized=*/true),
        IntervalPartitionMatroid(12, 4), false);
  }
  return out;
}

bool FixtureReport::all_passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const FixtureOutcome& o) { return o.passed; });
}

FixtureReport VerifyFixtures(const ExperimentConfig& config) {
  if (config.monte_carlo_runs < 2) {
    throw InputError("monte_carlo_runs must be >= 2");
  }
  const std::vector<Fixture> fixtures = BuildFixtures(config.master_seed);
  FixtureReport report;
  report.outcomes.resize(fixtures.size());
  ParallelFor(fixtures.size(), ResolveThreadCount(config.threads),
              [&](std::size_t i) {
    const Fixture& fx = fixtures[i];
    FixtureOutcome& o = report.outcomes[i];
    o.name = fx.name;
    o.n = fx.matroid.ground_size();
    o.rank = fx.matroid.Rank();
    o.modular = fx.modular;
    OptResult opt = BruteForceOpt(*fx.oracle, fx.matroid);
    o.opt_value = opt.value;
    o.opt_set = opt.set;
    o.gamma = EstimateGamma(*fx.oracle, fx.matroid, o.rank);
    o.bound_ratio = std::pow(1.0 + 1.0 / o.gamma.gamma, -2.0);
    std::vector<double> values(config.monte_carlo_runs);
    const std::uint64_t fixture_seed = DeriveSeed(config.master_seed, 1000 + i);
    for (std::size_t r = 0; r < values.size(); ++r) {
      Rng rng(DeriveSeed(fixture_seed, r));
      values[r] = ResidualRandomGreedy(*fx.oracle, fx.matroid, rng).final_value;
    }
    o.runs = values.size();
    o.mean_value = Mean(values);
    o.standard_error = StandardError(values);
    o.greedy_value = StandardGreedy(*fx.oracle, fx.matroid).final_value;
    o.passed = o.gamma.gamma > 0.0 &&
               o.mean_value >= o.bound_ratio * o.opt_value - 3.0 * o.standard_error;
    if (fx.modular) {
      o.passed = o.passed &&
                 std::abs(o.greedy_value - o.opt_value) <= kValueTolerance;
    }
  });
  return report;
}

nlohmann::json ToJson(const FixtureReport& report) {
  nlohmann::json fixtures = nlohmann::json::array();
  for (const FixtureOutcome& o : report.outcomes) {
    fixtures.push_back({
        {"name", o.name},
        {"n", o.n},
        {"rank", o.rank},
        {"opt_value", o.opt_value},
        {"opt_set", std::vector<Element>(o.opt_set.begin(), o.opt_set.end())},
        {"gamma", ToJson(o.gamma)},
        {"bound_ratio", o.bound_ratio},
        {"mean_value", o.mean_value},
        {"mean_ratio", o.mean_ratio()},
        {"standard_error", o.standard_error},
        {"runs", o.runs},
        {"greedy_value", o.greedy_value},
        {"modular", o.modular},
        {"passed", o.passed},
    });
  }
  return nlohmann::json{{"fixtures", fixtures}, {"all_passed", report.all_passed()}};
}

std::size_t ResolveThreadCount(std::size_t requested) {
  std::size_t threads = requested;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WSUB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap > 0) threads = std::min<std::size_t>(threads, cap);
  }
  return std::max<std::size_t>(threads, 1);
}

void ParallelFor(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace wsub
