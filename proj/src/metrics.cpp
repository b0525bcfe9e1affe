#include "phfeat/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "phfeat/error.hpp"

namespace phfeat {

std::pair<std::string, std::string> label_pair(std::span<const std::string> labels) {
  std::vector<std::string> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() != 2) {
    throw DataError("expected exactly two classes, found " + std::to_string(distinct.size()));
  }
  return {distinct[0], distinct[1]};
}

double roc_auc(std::span<const double> scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) throw ShapeError("AUC: scores and labels differ in length");
  // Rank-sum form: midranks give tied scores half credit.
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(scores.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
    i = j + 1;
  }
  double n_pos = 0, rank_sum = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (positive[i]) {
      n_pos += 1;
      rank_sum += rank[i];
    }
  }
  const double n_neg = static_cast<double>(scores.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw DataError("AUC is undefined when only one class is present");
  return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg);
}

MetricsReport metrics(std::span<const double> scores, std::span<const std::string> predicted,
                      std::span<const std::string> truth) {
  if (truth.empty()) throw DataError("metrics need at least one sample");
  if (scores.size() != truth.size() || predicted.size() != truth.size()) {
    throw ShapeError("metrics: scores, predictions and truth differ in length");
  }
  const std::string positive = label_pair(truth).second;
  std::vector<bool> is_pos(truth.size());
  double tp = 0, fp = 0, fn = 0, correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool t = truth[i] == positive;
    const bool p = predicted[i] == positive;
    is_pos[i] = t;
    correct += (t == p);
    tp += (t && p);
    fp += (!t && p);
    fn += (t && !p);
  }
  MetricsReport r;
  r.accuracy = correct / static_cast<double>(truth.size());
  r.auc = roc_auc(scores, is_pos);
  r.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  r.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

}  // namespace phfeat
