#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace phfeat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Labels are +1 / -1 throughout.

struct LossGradient {
  double loss = 0.0;
  Vector grad_w;
  double grad_b = 0.0;
};

// Mean logistic loss plus (l2 / 2) * |w|^2; the intercept is not penalised.
LossGradient logistic_loss(const Matrix& X, const Vector& y, const Vector& w, double b, double l2);

// Smallest step-size denominator for the mean logistic loss: 0.25 * sigma_max([X 1])^2 / n.
double logistic_lipschitz(const Matrix& X);

struct LogisticModel {
  Vector w;
  double b = 0.0;
  int iterations = 0;
  bool converged = false;

  Vector predict_proba(const Matrix& X) const;
};

struct LogisticOptions {
  double l2 = 1e-2;
  double tolerance = 1e-8;  // on the max-norm of the gradient
  int max_iterations = 200000;
};

// Gradient descent with step 1/L from w = 0, b = 0.
LogisticModel fit_logistic(const Matrix& X, const Vector& y, const LogisticOptions& opts = {});

struct KnnModel {
  Matrix X;
  Vector y;
  int k = 5;

  // Fraction of positive labels among the k nearest training rows (Euclidean,
  // distance ties resolved towards the lower row index).
  Vector predict_scores(const Matrix& test) const;
};

KnnModel fit_knn(const Matrix& X, const Vector& y, int k = 5);

struct LassoResult {
  Vector w;
  double b = 0.0;
  std::vector<int> support;  // columns with |w| > 1e-8
  int iterations = 0;
  bool converged = false;
};

struct LassoOptions {
  double tolerance = 1e-8;  // on the max-norm of successive iterate differences
  int max_iterations = 20000;
};

// L1-penalised logistic regression by proximal gradient (soft thresholding),
// starting from zero. The intercept is unpenalised.
LassoResult lasso_select(const Matrix& X, const Vector& y, double lambda, const LassoOptions& opts = {});

// Smallest lambda with an empty lasso support: max |grad_w| at w = 0 and the
// optimal intercept.
double lasso_lambda_max(const Matrix& X, const Vector& y);

enum class Classifier { LogReg, Knn };

std::string_view to_string(Classifier c);
std::optional<Classifier> parse_classifier(std::string_view text);

// Scores in [0, 1]; a score >= 0.5 predicts the positive class.
Vector train_predict(Classifier c, const Matrix& train_X, const Vector& train_y, const Matrix& test_X);

Matrix select_columns(const Matrix& X, const std::vector<int>& columns);

}  // namespace phfeat
