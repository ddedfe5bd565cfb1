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

#include "wsub/objectives.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wsub/csv.h"
#include "wsub/errors.h"

namespace wsub {

ModularFunction::ModularFunction(std::vector<double> weights)
    : ValueOracle(weights.size()), weights_(std::move(weights)) {}

double ModularFunction::EvaluateImpl(const ElementSet& s) const {
  double total = 0.0;
  for (Element e : s) total += weights_[e];
  return total;
}

TabulatedFunction::TabulatedFunction(std::size_t n, std::vector<double> values)
    : ValueOracle(n), values_(std::move(values)) {
  if (n > 20 || values_.size() != (std::size_t{1} << n)) {
    throw InputError("tabulated function needs 2^n values with n <= 20");
  }
}

double TabulatedFunction::EvaluateImpl(const ElementSet& s) const {
  return values_[s.ToMask()];
}

CoverageFunction::CoverageFunction(std::size_t universe_size,
                                   std::vector<ElementSet> sets,
                                   std::vector<double> weights)
    : ValueOracle(sets.size()),
      universe_size_(universe_size),
      sets_(std::move(sets)),
      weights_(std::move(weights)) {
  if (weights_.size() != universe_size_) {
    throw InputError("coverage function: one weight per universe item needed");
  }
  for (const ElementSet& s : sets_) {
    if (!s.empty() && s.max() >= universe_size_) {
      throw InputError("coverage function: set item outside the universe");
    }
  }
}

double CoverageFunction::EvaluateImpl(const ElementSet& s) const {
  std::vector<char> covered(universe_size_, 0);
  double total = 0.0;
  for (Element e : s) {
    for (Element item : sets_[e]) covered[item] = 1;
  }
  // Summing in item order keeps f(S + e) >= f(S) exact in floating point.
  for (std::size_t item = 0; item < universe_size_; ++item) {
    if (covered[item]) total += weights_[item];
  }
  return total;
}

OraclePtr MakeCoverageFunction(std::size_t universe_size,
                               std::vector<ElementSet> sets,
                               std::vector<double> weights) {
  return std::make_shared<CoverageFunction>(universe_size, std::move(sets),
                                            std::move(weights));
}

// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd SelectColumns(const Eigen::MatrixXd& x, const ElementSet& s) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(s.size()));
  Eigen::Index j = 0;
  for (Element e : s) out.col(j++) = x.col(e);
  return out;
}

}  // namespace

LeastSquaresObjective::LeastSquaresObjective(RegressionProblem problem)
    : ValueOracle(static_cast<std::size_t>(problem.design.cols())),
      problem_(std::move(problem)) {
  if (problem_.design.rows() < 1 || problem_.design.cols() < 1) {
    throw InputError("regression problem needs n >= 1 rows and p >= 1 columns");
  }
  if (problem_.response.size() != problem_.design.rows()) {
    throw InputError("regression problem: response length " +
                     std::to_string(problem_.response.size()) + " != rows " +
                     std::to_string(problem_.design.rows()));
  }
  column_norms_ = problem_.design.colwise().norm().transpose();
  response_norm2_ = problem_.response.squaredNorm();
}

double LeastSquaresObjective::ValueFromResidual(
    const Eigen::VectorXd& residual) const {
  return response_norm2_ - residual.squaredNorm();
}

std::shared_ptr<const LeastSquaresObjective::Factorization>
LeastSquaresObjective::Factor(const ElementSet& s) const {
  auto f = std::make_shared<Factorization>();
  f->set = s;
  const Eigen::Index n = problem_.design.rows();
  if (s.empty()) {
    f->basis.resize(n, 0);
    f->residual = problem_.response;
    return f;
  }
  for (Element e : s) {
    f->max_column_norm = std::max(f->max_column_norm, column_norms_[e]);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(SelectColumns(problem_.design, s));
  qr.setThreshold(kRankTolerance);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ();
  f->basis = q.leftCols(rank);
  f->residual =
      problem_.response - f->basis * (f->basis.transpose() * problem_.response);
  return f;
}

double LeastSquaresObjective::EvaluateImpl(const ElementSet& s) const {
  std::shared_ptr<const Factorization> cached;
  {
    std::lock_guard<std::mutex> lock(cache_mu_);
    cached = cache_;
  }
  if (cached != nullptr) {
    if (cached->set == s) return ValueFromResidual(cached->residual);
    if (s.size() == cached->set.size() + 1 && cached->set.IsSubsetOf(s)) {
      const Element u = s.Difference(cached->set)[0];
      Eigen::VectorXd x = problem_.design.col(u);
      const Eigen::MatrixXd& q = cached->basis;
      // Two passes of classical Gram-Schmidt keep the new direction
      // orthogonal to working precision.
      for (int pass = 0; pass < 2; ++pass) x -= q * (q.transpose() * x);
      const double scale = std::max(cached->max_column_norm, column_norms_[u]);
      const double norm = x.norm();
      if (!(norm > kRankTolerance * scale)) {
        return ValueFromResidual(cached->residual);
      }
      x /= norm;
      const Eigen::VectorXd residual =
          cached->residual - x * x.dot(cached->residual);
      return ValueFromResidual(residual);
    }
  }
  auto fresh = Factor(s);
  const double value = ValueFromResidual(fresh->residual);
  std::lock_guard<std::mutex> lock(cache_mu_);
  cache_ = std::move(fresh);
  return value;
}

Eigen::VectorXd LeastSquaresObjective::Coefficients(const ElementSet& s) const {
  if (!s.empty() && s.max() >= ground_size()) {
    throw InputError("least squares: column index out of range");
  }
  if (s.empty()) return Eigen::VectorXd(0);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
      SelectColumns(problem_.design, s));
  cod.setThreshold(kRankTolerance);
  return cod.solve(problem_.response);
}

Eigen::VectorXd LeastSquaresObjective::Residual(const ElementSet& s) const {
  if (s.empty()) return problem_.response;
  return problem_.response -
         SelectColumns(problem_.design, s) * Coefficients(s);
}

std::shared_ptr<const LeastSquaresObjective> LeastSquaresLoglik(
    RegressionProblem problem) {
  return std::make_shared<LeastSquaresObjective>(std::move(problem));
}

// ---------------------------------------------------------------------------

KernelGramian GaussianGram(const std::vector<Eigen::VectorXd>& vectors,
                           double bandwidth) {
  if (!(bandwidth > 0.0)) {
    throw InputError("gaussian kernel: bandwidth must be positive");
  }
  const auto n = static_cast<Eigen::Index>(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) {
      throw InputError("gaussian kernel: vectors differ in dimension");
    }
  }
  KernelGramian gram;
  gram.bandwidth = bandwidth;
  gram.matrix.resize(n, n);
  const double denom = 2.0 * bandwidth * bandwidth;
  for (Eigen::Index i = 0; i < n; ++i) {
    gram.matrix(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d2 = (vectors[i] - vectors[j]).squaredNorm();
      gram.matrix(i, j) = gram.matrix(j, i) = std::exp(-d2 / denom);
    }
  }
  return gram;
}

DppDeterminant::DppDeterminant(KernelGramian gram, bool subtract_one)
    : ValueOracle(static_cast<std::size_t>(gram.matrix.rows())),
      gram_(std::move(gram)),
      subtract_one_(subtract_one) {
  if (gram_.matrix.rows() != gram_.matrix.cols()) {
    throw InputError("DPP kernel must be square");
  }
}

double DppDeterminant::EvaluateImpl(const ElementSet& s) const {
  const auto k = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = gram_.matrix(s[i], s[j]);
    m(i, i) += 1.0;
  }
  double det = 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) {
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < k; ++i) det *= l(i, i) * l(i, i);
  } else {
    det = m.partialPivLu().determinant();
  }
  return subtract_one_ ? det - 1.0 : det;
}

OraclePtr DppDeterminantOracle(KernelGramian gram, bool normalized) {
  return std::make_shared<DppDeterminant>(std::move(gram), normalized);
}

// ---------------------------------------------------------------------------

namespace {

// log(1 + exp(z)) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void CheckSupport(const LogisticProblem& problem, const ElementSet& s,
                  Eigen::Index w_size) {
  if (!s.empty() && s.max() >= problem.features.cols()) {
    throw InputError("logistic: feature index out of range");
  }
  if (w_size != static_cast<Eigen::Index>(s.size())) {
    throw InputError("logistic: weight vector does not match support");
  }
}

}  // namespace

double LogisticObjectiveValue(const LogisticProblem& problem,
                              const ElementSet& s, const Eigen::VectorXd& w) {
  CheckSupport(problem, s, w.size());
  Eigen::VectorXd z = Eigen::VectorXd::Zero(problem.features.rows());
  for (std::size_t i = 0; i < s.size(); ++i) {
    z += w[static_cast<Eigen::Index>(i)] * problem.features.col(s[i]);
  }
  double total = 0.0;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    total += problem.labels[j] * z[j] - Softplus(z[j]);
  }
  return total - problem.ridge * w.squaredNorm();
}

Eigen::VectorXd LogisticGradient(const LogisticProblem& problem,
                                 const ElementSet& s, const Eigen::VectorXd& w) {
  CheckSupport(problem, s, w.size());
  const Eigen::MatrixXd xs = SelectColumns(problem.features, s);
  const Eigen::VectorXd z = xs * w;
  Eigen::VectorXd r(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    r[j] = problem.labels[j] - Sigmoid(z[j]);
  }
  return xs.transpose() * r - 2.0 * problem.ridge * w;
}

LogisticLoglik::LogisticLoglik(LogisticProblem problem)
    : ValueOracle(static_cast<std::size_t>(problem.features.cols())),
      problem_(std::move(problem)) {
  if (problem_.labels.size() != problem_.features.rows()) {
    throw InputError("logistic problem: label count differs from row count");
  }
  if (problem_.ridge < 0.0) {
    throw InputError("logistic problem: ridge must be non-negative");
  }
}

LogisticFit LogisticLoglik::Fit(const ElementSet& s) const {
  const auto k = static_cast<Eigen::Index>(s.size());
  const Eigen::MatrixXd xs = SelectColumns(problem_.features, s);
  const Eigen::VectorXd& y = problem_.labels;
  const double ridge = problem_.ridge;

  auto objective = [&](const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      total += y[j] * z[j] - Softplus(z[j]);
    }
    return total - ridge * w.squaredNorm();
  };

  LogisticFit fit;
  fit.weights = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(xs.rows());
  fit.objective = objective(z, fit.weights);
  Eigen::VectorXd p(z.size());
  Eigen::VectorXd curvature(z.size());
  for (;;) {
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      p[j] = Sigmoid(z[j]);
      curvature[j] = p[j] * (1.0 - p[j]);
    }
    fit.gradient = xs.transpose() * (y - p) - 2.0 * ridge * fit.weights;
    if (k == 0 || fit.gradient.lpNorm<Eigen::Infinity>() < kGradientTolerance) {
      fit.converged = true;
      break;
    }
    if (fit.iterations == kMaxIterations) break;
    ++fit.iterations;

    Eigen::MatrixXd hessian = xs.transpose() * curvature.asDiagonal() * xs;
    hessian.diagonal().array() += 2.0 * ridge;
    Eigen::VectorXd step = hessian.ldlt().solve(fit.gradient);
    if (!step.allFinite() || step.dot(fit.gradient) <= 0.0) step = fit.gradient;

    // Backtracking until the Armijo condition holds. Near the optimum the
    // predicted gain drops below rounding noise, so a full step that does not
    // lose more than that noise is taken as is.
    const double slope = step.dot(fit.gradient);
    const double noise = 1e-12 * (1.0 + std::abs(fit.objective));
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      Eigen::VectorXd w_new = fit.weights + t * step;
      Eigen::VectorXd z_new = xs * w_new;
      const double value = objective(z_new, w_new);
      if (value >= fit.objective + 1e-4 * t * slope ||
          (halving == 0 && value >= fit.objective - noise)) {
        fit.weights = std::move(w_new);
        z = std::move(z_new);
        fit.objective = value;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return fit;
}

double LogisticLoglik::EvaluateImpl(const ElementSet& s) const {
  const double empty_value =
      -static_cast<double>(problem_.features.rows()) * std::numbers::ln2;
  if (s.empty()) return 0.0;
  LogisticFit fit = Fit(s);
  if (!fit.converged) {
    Warn("logistic fit on " + s.ToString() + " stopped after " +
         std::to_string(fit.iterations) + " iterations with |grad|_inf = " +
         FormatDouble(fit.gradient.lpNorm<Eigen::Infinity>()));
  }
  return fit.objective - empty_value;
}

std::shared_ptr<const LogisticLoglik> LogisticLoglikOracle(
    LogisticProblem problem) {
  return std::make_shared<LogisticLoglik>(std::move(problem));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> ProblemHeader(const std::string& first,
                                       Eigen::Index features) {
  std::vector<std::string> header{first};
  for (Eigen::Index j = 0; j < features; ++j) {
    header.push_back("x" + std::to_string(j));
  }
  return header;
}

Eigen::MatrixXd Stack(const Eigen::VectorXd& first, const Eigen::MatrixXd& rest) {
  Eigen::MatrixXd m(rest.rows(), rest.cols() + 1);
  m.col(0) = first;
  m.rightCols(rest.cols()) = rest;
  return m;
}

}  // namespace

void SaveRegressionProblem(const RegressionProblem& problem,
                           const std::filesystem::path& path) {
  WriteMatrixCsv(path, Stack(problem.response, problem.design),
                 ProblemHeader("y", problem.design.cols()));
}

RegressionProblem LoadRegressionProblem(const std::filesystem::path& path) {
  Eigen::MatrixXd m = ReadMatrixCsv(path, /*has_header=*/true);
  if (m.cols() < 2) throw InputError(path.string() + ": need y and >= 1 feature");
  return {m.rightCols(m.cols() - 1), m.col(0)};
}

void SaveLogisticProblem(const LogisticProblem& problem,
                         const std::filesystem::path& path) {
  WriteMatrixCsv(path, Stack(problem.labels, problem.features),
                 ProblemHeader("label", problem.features.cols()));
}

LogisticProblem LoadLogisticProblem(const std::filesystem::path& path,
                                    double ridge) {
  Eigen::MatrixXd m = ReadMatrixCsv(path, /*has_header=*/true);
  if (m.cols() < 2) {
    throw InputError(path.string() + ": need label and >= 1 feature");
  }
  LogisticProblem problem{m.rightCols(m.cols() - 1), m.col(0), ridge};
  auto binary = [](double v) { return v == 0.0 || v == 1.0; };
  if (!problem.features.unaryExpr(binary).all() ||
      !problem.labels.unaryExpr(binary).all()) {
    throw InputError(path.string() + ": logistic data must be 0/1");
  }
  return problem;
}

void SaveKernelGramian(const KernelGramian& gram,
                       const std::filesystem::path& path) {
  WriteMatrixCsv(path, gram.matrix);
}

KernelGramian LoadKernelGramian(const std::filesystem::path& path,
                                double bandwidth) {
  Eigen::MatrixXd m = ReadMatrixCsv(path, /*has_header=*/false);
  if (m.rows() != m.cols()) throw InputError(path.string() + ": not square");
  return {std::move(m), bandwidth};
}

}  // namespace wsub
