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

#ifndef WSUB_DATAGEN_H_
#define WSUB_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "wsub/element_set.h"
#include "wsub/matroid.h"
#include "wsub/objectives.h"
#include "wsub/random.h"

namespace wsub {

// n x p matrix whose rows are independent AR(1) sequences:
// x_1 = e_1, x_j = alpha x_{j-1} + e_j, with e_j ~ Normal(0, sigma2).
// Throws InputError unless |alpha| < 1 and sigma2 >= 0.
Eigen::MatrixXd ArMatrix(std::size_t n, std::size_t p, double alpha,
                         double sigma2, Rng& rng);

// Graphic matroid on `num_vertices` vertices whose edges are independent
// uniformly random pairs of distinct vertices. Parallel edges may occur.
MatroidSpec RandomGraphicMatroid(std::size_t num_vertices,
                                 std::size_t num_edges, Rng& rng);

// Partition matroid on p elements: a block distribution drawn uniformly from
// the simplex (normalized exponentials), i.i.d. block assignment from it, and
// block capacities drawn from Binomial(|B_i|, 0.25).
MatroidSpec RandomPartitionMatroid(std::size_t p, std::size_t num_blocks,
                                   Rng& rng);

// Blocks [0, interval), [interval, 2 interval), ... over n elements, each
// with the given capacity.
MatroidSpec IntervalPartitionMatroid(std::size_t n, std::size_t interval,
                                     std::size_t capacity = 1);

struct LinRegOptions {
  double alpha = 0.5;
  double sigma2 = 10.0;
  // When false, y = X beta exactly.
  bool add_noise = true;
};

struct LinRegInstance {
  RegressionProblem problem;
  Eigen::VectorXd beta_true;
  MatroidSpec matroid = MatroidSpec::Uniform(0, 0);
  std::uint64_t seed = 0;
  ElementSet support;
  // Normalized log-likelihood of supp(beta_true).
  double ground_truth_value = 0.0;
  LinRegOptions options;
};

// X = ArMatrix(n, p, alpha, sigma2); supp(beta) = RandomBase(matroid) with
// +-1 entries; y = X beta + standard normal noise.
LinRegInstance MakeLinRegInstance(std::size_t n, std::size_t p,
                                  MatroidSpec matroid, Rng& rng,
                                  const LinRegOptions& options = {});

// Directory with X.csv, y.csv, beta.csv, matroid.json and meta.json.
void SaveLinRegInstance(const LinRegInstance& instance,
                        const std::filesystem::path& dir);
LinRegInstance LoadLinRegInstance(const std::filesystem::path& dir);

// Stand-in for per-frame video features: a Gaussian random walk in R^dim
// with step standard deviation `step`, so nearby frames look alike.
std::vector<Eigen::VectorXd> SyntheticFrames(std::size_t num_frames,
                                             std::size_t dim, double step,
                                             Rng& rng);

struct OneHotInstance {
  LogisticProblem problem;
  MatroidSpec matroid = MatroidSpec::Uniform(0, 0);
};

// `num_variables` categorical variables with `arity` uniform levels each,
// one-hot encoded into arity * num_variables binary columns. Labels follow a
// no-intercept logistic model with one standard normal weight per dummy.
// The matroid allows at most one dummy per variable.
OneHotInstance MakeOneHotLogistic(std::size_t samples,
                                  std::size_t num_variables, std::size_t arity,
                                  double ridge, Rng& rng);

}  // namespace wsub

#endif  // WSUB_DATAGEN_H_
