#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phfeat/image.hpp"
#include "phfeat/learn.hpp"
#include "phfeat/metrics.hpp"
#include "phfeat/pipeline.hpp"
#include "phfeat/ulbp.hpp"

namespace phfeat {

inline constexpr const char* kToolVersion = "0.3.0";

enum class Filtration { Cubical, Rips };

std::string_view to_string(Filtration f);
std::optional<Filtration> parse_filtration(std::string_view text);

struct ExtractConfig {
  Filtration filtration = Filtration::Cubical;
  std::vector<UlbpPattern> patterns;  // required (nonempty) for Rips
  VectorizerConfig vectorizer;
  CombineMode combine = CombineMode::Concat;
  // When set, grids are fitted on the training part of this split only.
  std::optional<std::uint64_t> split_seed;
  double test_fraction = 0.2;
};

// Per-subject barcodes in manifest order. Relative image paths resolve
// against `base_dir`. Rips subjects list, for each image, one diagram per
// pattern in ascending (geometry, rotation) order.
std::vector<SubjectBarcodes> compute_barcodes(const std::vector<ManifestRecord>& records,
                                              const std::filesystem::path& base_dir, const ExtractConfig& cfg);

struct Extraction {
  FeatureTable table;
  FeatureGrids grids;
  std::vector<std::size_t> grid_subjects;  // rows the grids were fitted on
};

Extraction vectorize_subjects(const std::vector<SubjectBarcodes>& subjects, const ExtractConfig& cfg);

enum class Selection { None, Lasso };

std::string_view to_string(Selection s);
std::optional<Selection> parse_selection(std::string_view text);

struct ExperimentConfig {
  Classifier classifier = Classifier::LogReg;
  Selection selection = Selection::None;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  std::vector<double> lambda_grid = {1e-3, 1e-2, 1e-1, 1.0, 10.0};
};

struct ExperimentResult {
  MetricsReport metrics;
  std::vector<std::string> test_ids;
  std::vector<double> test_scores;
  std::size_t train_size = 0;
  std::size_t features_in = 0;
  std::size_t features_used = 0;
  std::optional<double> lambda;
  bool lasso_converged = true;
  std::string positive_label;
  std::map<std::string, double> timings_ms;
};

// Split, z-score (train parameters), optional lasso selection, classifier, metrics.
ExperimentResult run_experiment(const FeatureTable& table, const ExperimentConfig& cfg);

nlohmann::ordered_json metrics_json(const MetricsReport& m);

struct MetricsRow {
  std::string method;
  MetricsReport metrics;
};

// Plain-text table with columns Method, Accuracy, AUC, Recall, Prec., F1.
std::string format_metrics_table(const std::vector<MetricsRow>& rows);

}  // namespace phfeat
