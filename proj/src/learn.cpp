#include "phfeat/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phfeat/error.hpp"

namespace phfeat {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Loss of the data term and the derivative with respect to each margin input.
double data_term(const Matrix& X, const Vector& y, const Vector& w, double b, Vector& dz) {
  const Eigen::Index n = X.rows();
  const Vector z = (X * w).array() + b;
  dz.resize(n);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = y[i] * z[i];
    loss += softplus(-m);
    dz[i] = -y[i] * sigmoid(-m) / static_cast<double>(n);
  }
  return loss / static_cast<double>(n);
}

}  // namespace

LossGradient logistic_loss(const Matrix& X, const Vector& y, const Vector& w, double b, double l2) {
  Vector dz;
  LossGradient out;
  out.loss = data_term(X, y, w, b, dz) + 0.5 * l2 * w.squaredNorm();
  out.grad_w = X.transpose() * dz + l2 * w;
  out.grad_b = dz.sum();
  return out;
}

double logistic_lipschitz(const Matrix& X) {
  const Eigen::Index n = X.rows();
  if (n == 0) return 1.0;
  Matrix A(n, X.cols() + 1);
  A << X, Vector::Ones(n);
  // Power iteration on A^T A from a fixed start keeps the result deterministic.
  Vector v = Vector::Ones(A.cols()).normalized();
  double sigma2 = 0.0;
  for (int it = 0; it < 200; ++it) {
    Vector next = A.transpose() * (A * v);
    const double norm = next.norm();
    if (norm == 0.0) break;
    const double prev = sigma2;
    sigma2 = norm;
    v = next / norm;
    if (std::abs(sigma2 - prev) <= 1e-10 * sigma2) break;
  }
  // Power iteration approaches sigma_max^2 from below; pad by 1%.
  return 0.25 * 1.01 * sigma2 / static_cast<double>(n);
}

Vector LogisticModel::predict_proba(const Matrix& X) const {
  Vector z = (X * w).array() + b;
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = sigmoid(z[i]);
  return z;
}

LogisticModel fit_logistic(const Matrix& X, const Vector& y, const LogisticOptions& opts) {
  if (X.rows() != y.size()) throw ShapeError("logistic regression: X and y disagree on rows");
  if (X.rows() == 0) throw DataError("logistic regression: empty training set");
  LogisticModel m;
  m.w = Vector::Zero(X.cols());
  const double step = 1.0 / (logistic_lipschitz(X) + opts.l2);
  for (m.iterations = 0; m.iterations < opts.max_iterations; ++m.iterations) {
    const LossGradient g = logistic_loss(X, y, m.w, m.b, opts.l2);
    const double gmax = std::max(g.grad_w.size() ? g.grad_w.cwiseAbs().maxCoeff() : 0.0, std::abs(g.grad_b));
    if (gmax < opts.tolerance) {
      m.converged = true;
      break;
    }
    m.w -= step * g.grad_w;
    m.b -= step * g.grad_b;
  }
  return m;
}

KnnModel fit_knn(const Matrix& X, const Vector& y, int k) {
  if (k < 1) throw ParameterError("knn: k must be positive");
  if (k > X.rows()) {
    throw ParameterError("knn: k = " + std::to_string(k) + " exceeds training size " + std::to_string(X.rows()));
  }
  return KnnModel{X, y, k};
}

Vector KnnModel::predict_scores(const Matrix& test) const {
  Vector scores(test.rows());
  std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index t = 0; t < test.rows(); ++t) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) dist[static_cast<std::size_t>(i)] = {(X.row(i) - test.row(t)).squaredNorm(), i};
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    int positive = 0;
    for (int j = 0; j < k; ++j) positive += y[dist[static_cast<std::size_t>(j)].second] > 0 ? 1 : 0;
    scores[t] = static_cast<double>(positive) / k;
  }
  return scores;
}

double lasso_lambda_max(const Matrix& X, const Vector& y) {
  const double pos = static_cast<double>((y.array() > 0).count());
  const double neg = static_cast<double>(y.size()) - pos;
  const double b = (pos > 0 && neg > 0) ? std::log(pos / neg) : 0.0;
  const LossGradient g = logistic_loss(X, y, Vector::Zero(X.cols()), b, 0.0);
  return g.grad_w.size() ? g.grad_w.cwiseAbs().maxCoeff() : 0.0;
}

LassoResult lasso_select(const Matrix& X, const Vector& y, double lambda, const LassoOptions& opts) {
  if (X.rows() != y.size()) throw ShapeError("lasso: X and y disagree on rows");
  if (lambda < 0) throw ParameterError("lasso: lambda must be non-negative");
  LassoResult r;
  r.w = Vector::Zero(X.cols());
  const double step = 1.0 / logistic_lipschitz(X);
  const double shrink = step * lambda;
  for (r.iterations = 0; r.iterations < opts.max_iterations; ++r.iterations) {
    const LossGradient g = logistic_loss(X, y, r.w, r.b, 0.0);
    Vector next = r.w - step * g.grad_w;
    for (Eigen::Index j = 0; j < next.size(); ++j) {
      const double v = next[j];
      next[j] = v > shrink ? v - shrink : (v < -shrink ? v + shrink : 0.0);
    }
    const double next_b = r.b - step * g.grad_b;
    const double delta = std::max(next.size() ? (next - r.w).cwiseAbs().maxCoeff() : 0.0, std::abs(next_b - r.b));
    r.w = std::move(next);
    r.b = next_b;
    if (delta < opts.tolerance) {
      r.converged = true;
      ++r.iterations;
      break;
    }
  }
  for (Eigen::Index j = 0; j < r.w.size(); ++j)
    if (std::abs(r.w[j]) > 1e-8) r.support.push_back(static_cast<int>(j));
  return r;
}

std::string_view to_string(Classifier c) { return c == Classifier::LogReg ? "logreg" : "knn"; }

std::optional<Classifier> parse_classifier(std::string_view text) {
  if (text == "logreg") return Classifier::LogReg;
  if (text == "knn") return Classifier::Knn;
  return std::nullopt;
}

Vector train_predict(Classifier c, const Matrix& train_X, const Vector& train_y, const Matrix& test_X) {
  if (train_X.cols() != test_X.cols()) throw ShapeError("train and test matrices disagree on columns");
  if (c == Classifier::LogReg) return fit_logistic(train_X, train_y).predict_proba(test_X);
  return fit_knn(train_X, train_y).predict_scores(test_X);
}

Matrix select_columns(const Matrix& X, const std::vector<int>& columns) {
  Matrix out(X.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = X.col(columns[k]);
  return out;
}

}  // namespace phfeat
