#pragma once

#include <span>
#include <string>
#include <vector>

namespace phfeat {

struct MetricsReport {
  double accuracy = 0.0;
  double auc = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// The positive class is the lexicographically larger of the two labels in
// `truth`. AUC is the Mann-Whitney statistic with half credit for tied
// scores. Precision with no predicted positives is 0.
// Throws DataError when `truth` holds a single class.
MetricsReport metrics(std::span<const double> scores, std::span<const std::string> predicted,
                      std::span<const std::string> truth);

// Mann-Whitney AUC for boolean truth.
double roc_auc(std::span<const double> scores, const std::vector<bool>& positive);

// Two labels sorted ascending; the second is the positive class.
std::pair<std::string, std::string> label_pair(std::span<const std::string> labels);

}  // namespace phfeat
