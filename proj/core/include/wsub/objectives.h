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

#ifndef WSUB_OBJECTIVES_H_
#define WSUB_OBJECTIVES_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "wsub/element_set.h"
#include "wsub/set_function.h"

namespace wsub {

// ---------------------------------------------------------------------------
// Test fixtures.

// f(S) = sum of weights[u] over u in S.
class ModularFunction final : public ValueOracle {
 public:
  explicit ModularFunction(std::vector<double> weights);

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  std::vector<double> weights_;
};

// Explicit value table indexed by the bitmask of S; n <= 20.
class TabulatedFunction final : public ValueOracle {
 public:
  TabulatedFunction(std::size_t n, std::vector<double> values);

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  std::vector<double> values_;
};

// f(S) = total weight of the union of sets[e] for e in S. Monotone and
// submodular.
class CoverageFunction final : public ValueOracle {
 public:
  CoverageFunction(std::size_t universe_size, std::vector<ElementSet> sets,
                   std::vector<double> weights);

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  std::size_t universe_size_;
  std::vector<ElementSet> sets_;
  std::vector<double> weights_;
};

OraclePtr MakeCoverageFunction(std::size_t universe_size,
                               std::vector<ElementSet> sets,
                               std::vector<double> weights);

// ---------------------------------------------------------------------------
// Sparse linear regression.

struct RegressionProblem {
  Eigen::MatrixXd design;    // n x p, columns are ground-set elements
  Eigen::VectorXd response;  // length n
};

// f(S) = |y|^2 - min over beta supported on S of |y - X beta|^2, the
// normalized log-likelihood of the Gaussian linear model.
//
// Evaluations go through a column-pivoted Householder QR of X_S with
// relative rank threshold 1e-10. The orthonormal basis of the last fully
// factored set is cached, so f(S + u) right after f(S) costs one
// Gram-Schmidt step instead of a new factorization.
class LeastSquaresObjective final : public ValueOracle {
 public:
  static constexpr double kRankTolerance = 1e-10;

  explicit LeastSquaresObjective(RegressionProblem problem);

  const RegressionProblem& problem() const { return problem_; }
  // Minimum-norm least-squares coefficients on the columns of S, in S order.
  Eigen::VectorXd Coefficients(const ElementSet& s) const;
  // y - X_S * Coefficients(S).
  Eigen::VectorXd Residual(const ElementSet& s) const;

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  struct Factorization {
    ElementSet set;
    Eigen::MatrixXd basis;  // n x rank, orthonormal columns
    Eigen::VectorXd residual;
    double max_column_norm = 0.0;
  };

  std::shared_ptr<const Factorization> Factor(const ElementSet& s) const;
  double ValueFromResidual(const Eigen::VectorXd& residual) const;

  RegressionProblem problem_;
  Eigen::VectorXd column_norms_;
  double response_norm2_ = 0.0;
  mutable std::mutex cache_mu_;
  mutable std::shared_ptr<const Factorization> cache_;
};

std::shared_ptr<const LeastSquaresObjective> LeastSquaresLoglik(
    RegressionProblem problem);

// ---------------------------------------------------------------------------
// Determinantal point process.

struct KernelGramian {
  Eigen::MatrixXd matrix;
  double bandwidth = 1.0;
};

// X_ij = exp(-|v_i - v_j|^2 / (2 bandwidth^2)). Throws InputError when the
// vectors differ in dimension or bandwidth is not positive.
KernelGramian GaussianGram(const std::vector<Eigen::VectorXd>& vectors,
                           double bandwidth);

// f(S) = det(I + X_S), computed by Cholesky. With `subtract_one` the oracle
// returns det(I + X_S) - 1 so that f(empty) = 0.
class DppDeterminant final : public ValueOracle {
 public:
  DppDeterminant(KernelGramian gram, bool subtract_one);

  const KernelGramian& gram() const { return gram_; }

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  KernelGramian gram_;
  bool subtract_one_;
};

OraclePtr DppDeterminantOracle(KernelGramian gram, bool normalized = false);

// ---------------------------------------------------------------------------
// Logistic regression without intercept.

struct LogisticProblem {
  Eigen::MatrixXd features;  // m x d, entries in {0, 1}
  Eigen::VectorXd labels;    // length m, entries in {0, 1}
  double ridge = 1e-6;
};

struct LogisticFit {
  Eigen::VectorXd weights;   // one per member of S, in S order
  Eigen::VectorXd gradient;  // of the penalized log-likelihood at weights
  double objective = 0.0;    // penalized log-likelihood at weights
  int iterations = 0;
  bool converged = false;
};

// sum_j [y_j z_j - log(1 + exp(z_j))] - ridge |w|^2 with z = X w.
double LogisticObjectiveValue(const LogisticProblem& problem,
                              const ElementSet& s, const Eigen::VectorXd& w);
// Gradient of LogisticObjectiveValue with respect to w.
Eigen::VectorXd LogisticGradient(const LogisticProblem& problem,
                                 const ElementSet& s, const Eigen::VectorXd& w);

// f(S) = g(S) - g(empty) with g(S) the maximum penalized log-likelihood over
// weights supported on S; g(empty) = -m log 2. Fitting is damped Newton
// (IRLS) from w = 0, stopping at |gradient|_inf < 1e-8 or after 100
// iterations. A fit that stops on the iteration cap keeps its best iterate
// and raises a warning.
class LogisticLoglik final : public ValueOracle {
 public:
  static constexpr double kGradientTolerance = 1e-8;
  static constexpr int kMaxIterations = 100;

  explicit LogisticLoglik(LogisticProblem problem);

  const LogisticProblem& problem() const { return problem_; }
  LogisticFit Fit(const ElementSet& s) const;

 protected:
  double EvaluateImpl(const ElementSet& s) const override;

 private:
  LogisticProblem problem_;
};

std::shared_ptr<const LogisticLoglik> LogisticLoglikOracle(
    LogisticProblem problem);

// ---------------------------------------------------------------------------
// CSV persistence. The first column holds the response (label), the rest the
// features; the first row is a header.

void SaveRegressionProblem(const RegressionProblem& problem,
                           const std::filesystem::path& path);
RegressionProblem LoadRegressionProblem(const std::filesystem::path& path);
void SaveLogisticProblem(const LogisticProblem& problem,
                         const std::filesystem::path& path);
// The ridge is not stored; the loaded problem gets `ridge`.
LogisticProblem LoadLogisticProblem(const std::filesystem::path& path,
                                    double ridge = 1e-6);
// Dense matrix without header.
void SaveKernelGramian(const KernelGramian& gram,
                       const std::filesystem::path& path);
KernelGramian LoadKernelGramian(const std::filesystem::path& path,
                                double bandwidth);

}  // namespace wsub

#endif  // WSUB_OBJECTIVES_H_
