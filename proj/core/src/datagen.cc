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

#include "wsub/datagen.h"

#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "wsub/csv.h"
#include "wsub/errors.h"

namespace wsub {

Eigen::MatrixXd ArMatrix(std::size_t n, std::size_t p, double alpha,
                         double sigma2, Rng& rng) {
  if (!(std::abs(alpha) < 1.0)) {
    throw InputError("AR process needs |alpha| < 1");
  }
  if (!(sigma2 >= 0.0)) {
    throw InputError("AR process needs a non-negative noise variance");
  }
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(rows, cols);
  if (sigma2 == 0.0) return x;
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  for (Eigen::Index i = 0; i < rows; ++i) {
    double prev = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      prev = alpha * prev + noise(rng);
      x(i, j) = prev;
    }
  }
  return x;
}

MatroidSpec RandomGraphicMatroid(std::size_t num_vertices,
                                 std::size_t num_edges, Rng& rng) {
  if (num_vertices < 2) {
    throw InputError("random graphic matroid needs at least 2 vertices");
  }
  std::vector<GraphEdge> edges;
  edges.reserve(num_edges);
  for (std::size_t i = 0; i < num_edges; ++i) {
    const auto u = static_cast<std::uint32_t>(UniformIndex(rng, num_vertices));
    auto v = static_cast<std::uint32_t>(UniformIndex(rng, num_vertices - 1));
    if (v >= u) ++v;
    edges.push_back({u, v});
  }
  return MatroidSpec::Graphic(num_vertices, std::move(edges));
}

MatroidSpec RandomPartitionMatroid(std::size_t p, std::size_t num_blocks,
                                   Rng& rng) {
  if (num_blocks < 1) throw InputError("partition matroid needs >= 1 block");
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> probs(num_blocks);
  double total = 0.0;
  for (double& w : probs) total += (w = exp1(rng));
  for (double& w : probs) w /= total;

  std::vector<std::vector<Element>> members(num_blocks);
  for (std::size_t e = 0; e < p; ++e) {
    const double u = UniformUnit(rng);
    double acc = 0.0;
    std::size_t b = 0;
    for (; b + 1 < num_blocks; ++b) {
      acc += probs[b];
      if (u < acc) break;
    }
    members[b].push_back(static_cast<Element>(e));
  }
  std::vector<ElementSet> blocks;
  std::vector<std::size_t> capacities;
  for (auto& m : members) {
    std::binomial_distribution<std::size_t> cap(m.size(), 0.25);
    capacities.push_back(m.empty() ? 0 : cap(rng));
    blocks.push_back(ElementSet::FromUnsorted(std::move(m)));
  }
  return MatroidSpec::Partition(std::move(blocks), std::move(capacities));
}

MatroidSpec IntervalPartitionMatroid(std::size_t n, std::size_t interval,
                                     std::size_t capacity) {
  if (interval < 1) throw InputError("interval length must be positive");
  std::vector<ElementSet> blocks;
  for (std::size_t start = 0; start < n; start += interval) {
    ElementSet block;
    for (std::size_t e = start; e < std::min(n, start + interval); ++e) {
      block.insert(static_cast<Element>(e));
    }
    blocks.push_back(std::move(block));
  }
  std::vector<std::size_t> capacities(blocks.size(), capacity);
  return MatroidSpec::Partition(std::move(blocks), std::move(capacities));
}

LinRegInstance MakeLinRegInstance(std::size_t n, std::size_t p,
                                  MatroidSpec matroid, Rng& rng,
                                  const LinRegOptions& options) {
  if (matroid.ground_size() != p) {
    throw InputError("linear regression instance: matroid ground set size " +
                     std::to_string(matroid.ground_size()) + " != p = " +
                     std::to_string(p));
  }
  LinRegInstance inst;
  inst.options = options;
  inst.problem.design = ArMatrix(n, p, options.alpha, options.sigma2, rng);
  inst.support = RandomBase(matroid, rng);
  inst.beta_true = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  for (Element e : inst.support) {
    inst.beta_true[e] = (rng() >> 63) != 0 ? 1.0 : -1.0;
  }
  inst.problem.response = inst.problem.design * inst.beta_true;
  if (options.add_noise) {
    std::normal_distribution<double> noise(0.0, 1.0);
    for (Eigen::Index i = 0; i < inst.problem.response.size(); ++i) {
      inst.problem.response[i] += noise(rng);
    }
  }
  inst.matroid = std::move(matroid);
  LeastSquaresObjective f(inst.problem);
  inst.ground_truth_value = f.Evaluate(inst.support);
  return inst;
}

namespace {

void WriteJson(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

nlohmann::json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

void SaveLinRegInstance(const LinRegInstance& instance,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < instance.problem.design.cols(); ++j) {
    header.push_back("x" + std::to_string(j));
  }
  WriteMatrixCsv(dir / "X.csv", instance.problem.design, header);
  WriteMatrixCsv(dir / "y.csv", instance.problem.response, {"y"});
  WriteMatrixCsv(dir / "beta.csv", instance.beta_true, {"beta"});
  WriteJson(dir / "matroid.json", instance.matroid.ToJson());
  WriteJson(dir / "meta.json",
            nlohmann::json{
                {"seed", instance.seed},
                {"n", instance.problem.design.rows()},
                {"p", instance.problem.design.cols()},
                {"alpha", instance.options.alpha},
                {"sigma2", instance.options.sigma2},
                {"noise", instance.options.add_noise},
                {"support", std::vector<Element>(instance.support.begin(),
                                                 instance.support.end())},
                {"ground_truth_value", FormatDouble(instance.ground_truth_value)},
            });
}

LinRegInstance LoadLinRegInstance(const std::filesystem::path& dir) {
  LinRegInstance inst;
  inst.problem.design = ReadMatrixCsv(dir / "X.csv", /*has_header=*/true);
  inst.problem.response = ReadMatrixCsv(dir / "y.csv", /*has_header=*/true).col(0);
  inst.beta_true = ReadMatrixCsv(dir / "beta.csv", /*has_header=*/true).col(0);
  inst.matroid = MatroidSpec::FromJson(ReadJson(dir / "matroid.json"));
  const nlohmann::json meta = ReadJson(dir / "meta.json");
  try {
    inst.seed = meta.at("seed").get<std::uint64_t>();
    inst.options.alpha = meta.at("alpha").get<double>();
    inst.options.sigma2 = meta.at("sigma2").get<double>();
    inst.options.add_noise = meta.at("noise").get<bool>();
    inst.support =
        ElementSet::FromUnsorted(meta.at("support").get<std::vector<Element>>());
    inst.ground_truth_value =
        ParseDouble(meta.at("ground_truth_value").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError((dir / "meta.json").string() + ": " + e.what());
  }
  if (inst.problem.response.size() != inst.problem.design.rows() ||
      inst.beta_true.size() != inst.problem.design.cols() ||
      inst.matroid.ground_size() !=
          static_cast<std::size_t>(inst.problem.design.cols())) {
    throw InputError(dir.string() + ": inconsistent instance dimensions");
  }
  return inst;
}

std::vector<Eigen::VectorXd> SyntheticFrames(std::size_t num_frames,
                                             std::size_t dim, double step,
                                             Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<Eigen::VectorXd> frames;
  frames.reserve(num_frames);
  Eigen::VectorXd current(d);
  for (Eigen::Index j = 0; j < d; ++j) current[j] = normal(rng);
  for (std::size_t t = 0; t < num_frames; ++t) {
    if (t > 0) {
      for (Eigen::Index j = 0; j < d; ++j) current[j] += step * normal(rng);
    }
    frames.push_back(current);
  }
  return frames;
}

OneHotInstance MakeOneHotLogistic(std::size_t samples,
                                  std::size_t num_variables, std::size_t arity,
                                  double ridge, Rng& rng) {
  if (arity < 1 || num_variables < 1 || samples < 1) {
    throw InputError("one-hot logistic instance needs positive sizes");
  }
  const std::size_t d = num_variables * arity;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd w_true(static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < w_true.size(); ++j) w_true[j] = normal(rng);

  OneHotInstance inst;
  inst.problem.ridge = ridge;
  inst.problem.features = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(d));
  inst.problem.labels.resize(static_cast<Eigen::Index>(samples));
  for (Eigen::Index r = 0; r < inst.problem.features.rows(); ++r) {
    double z = 0.0;
    for (std::size_t v = 0; v < num_variables; ++v) {
      const auto col =
          static_cast<Eigen::Index>(v * arity + UniformIndex(rng, arity));
      inst.problem.features(r, col) = 1.0;
      z += w_true[col];
    }
    const double prob = 1.0 / (1.0 + std::exp(-z));
    inst.problem.labels[r] = UniformUnit(rng) < prob ? 1.0 : 0.0;
  }
  std::vector<ElementSet> blocks;
  for (std::size_t v = 0; v < num_variables; ++v) {
    ElementSet block;
    for (std::size_t a = 0; a < arity; ++a) {
      block.insert(static_cast<Element>(v * arity + a));
    }
    blocks.push_back(std::move(block));
  }
  inst.matroid = MatroidSpec::Partition(
      std::move(blocks), std::vector<std::size_t>(num_variables, 1));
  return inst;
}

}  // namespace wsub
