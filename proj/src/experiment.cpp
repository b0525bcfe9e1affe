#include "phfeat/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "phfeat/error.hpp"
#include "phfeat/parallel.hpp"

namespace phfeat {

std::string_view to_string(Filtration f) { return f == Filtration::Cubical ? "cubical" : "rips"; }

std::optional<Filtration> parse_filtration(std::string_view text) {
  if (text == "cubical") return Filtration::Cubical;
  if (text == "rips") return Filtration::Rips;
  return std::nullopt;
}

std::string_view to_string(Selection s) { return s == Selection::None ? "none" : "lasso"; }

std::optional<Selection> parse_selection(std::string_view text) {
  if (text == "none") return Selection::None;
  if (text == "lasso") return Selection::Lasso;
  return std::nullopt;
}

std::vector<SubjectBarcodes> compute_barcodes(const std::vector<ManifestRecord>& records,
                                              const std::filesystem::path& base_dir, const ExtractConfig& cfg) {
  if (cfg.filtration == Filtration::Rips && cfg.patterns.empty()) {
    throw ParameterError("Rips filtration needs at least one ULBP pattern");
  }
  std::vector<std::string> paths;
  std::vector<std::size_t> owner;
  for (std::size_t r = 0; r < records.size(); ++r) {
    for (const std::string& p : records[r].images) {
      const std::filesystem::path path(p);
      paths.push_back((path.is_absolute() ? path : base_dir / path).string());
      owner.push_back(r);
    }
  }
  std::vector<GrayImage> images(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) images[i] = load_image_file(paths[i]);

  std::vector<Diagram> diagrams;
  std::vector<std::size_t> diagram_owner;
  if (cfg.filtration == Filtration::Cubical) {
    diagrams = batch::cubical(images);
    diagram_owner = owner;
  } else {
    std::vector<UlbpPattern> patterns = cfg.patterns;
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    std::vector<PointCloud> clouds;
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (const UlbpPattern& p : patterns) {
        clouds.push_back(select_landmarks(images[i], p));
        diagram_owner.push_back(owner[i]);
      }
    }
    diagrams = batch::rips(clouds);
  }

  std::vector<SubjectBarcodes> subjects(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    subjects[r].id = records[r].id;
    subjects[r].label = records[r].label;
  }
  for (std::size_t d = 0; d < diagrams.size(); ++d) subjects[diagram_owner[d]].per_slice.push_back(std::move(diagrams[d]));
  check_uniform_slices(subjects);
  return subjects;
}

Extraction vectorize_subjects(const std::vector<SubjectBarcodes>& subjects, const ExtractConfig& cfg) {
  Extraction ex;
  if (subjects.empty()) throw DataError("no subjects to vectorize");
  check_uniform_slices(subjects);
  if (cfg.split_seed) {
    std::vector<std::string> labels;
    for (const SubjectBarcodes& s : subjects) labels.push_back(s.label);
    ex.grid_subjects = stratified_split(labels, cfg.test_fraction, *cfg.split_seed).train;
  } else {
    ex.grid_subjects.resize(subjects.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) ex.grid_subjects[i] = i;
  }
  std::vector<SubjectBarcodes> fit_on;
  for (std::size_t i : ex.grid_subjects) fit_on.push_back(subjects[i]);
  ex.grids = fit_grids(fit_on, cfg.vectorizer.gamma);

  std::vector<FeatureVector> rows = batch::features(subjects, cfg.combine, cfg.vectorizer, ex.grids);
  ex.table.columns = rows.front().labels;
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    ex.table.ids.push_back(subjects[i].id);
    ex.table.labels.push_back(subjects[i].label);
    ex.table.rows.push_back(std::move(rows[i].values));
  }
  return ex;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

template <typename T>
std::vector<T> pick(const std::vector<T>& all, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(all[i]);
  return out;
}

double accuracy(const Vector& scores, const Vector& y) {
  double correct = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) correct += ((scores[i] >= 0.5) == (y[i] > 0)) ? 1 : 0;
  return y.size() ? correct / static_cast<double>(y.size()) : 0.0;
}

}  // namespace

ExperimentResult run_experiment(const FeatureTable& table, const ExperimentConfig& cfg) {
  ExperimentResult res;
  if (table.rows.empty()) throw DataError("feature table has no rows");
  const auto [negative, positive] = label_pair(table.labels);
  res.positive_label = positive;

  auto t0 = Clock::now();
  const Split split = stratified_split(table.labels, cfg.test_fraction, cfg.seed);
  res.timings_ms["split"] = ms_since(t0);

  t0 = Clock::now();
  const auto train_rows = pick(table.rows, split.train);
  const auto test_rows = pick(table.rows, split.test);
  const ZScore z = zscore_fit(train_rows);
  const std::size_t cols = table.columns.size();
  Matrix train_X = to_matrix(zscore_apply(train_rows, z), cols);
  Matrix test_X = to_matrix(zscore_apply(test_rows, z), cols);
  Vector train_y(static_cast<Eigen::Index>(split.train.size()));
  for (std::size_t i = 0; i < split.train.size(); ++i)
    train_y[static_cast<Eigen::Index>(i)] = table.labels[split.train[i]] == positive ? 1.0 : -1.0;
  res.timings_ms["zscore"] = ms_since(t0);
  res.train_size = split.train.size();
  res.features_in = cols;

  t0 = Clock::now();
  if (cfg.selection == Selection::Lasso) {
    // lambda from a single stratified validation fold inside the training rows.
    std::vector<std::string> train_labels = pick(table.labels, split.train);
    const Split inner = stratified_split(train_labels, 0.25, cfg.seed + 1);
    std::vector<int> inner_train(inner.train.begin(), inner.train.end());
    std::vector<int> inner_val(inner.test.begin(), inner.test.end());
    const Matrix sub_X = train_X(inner_train, Eigen::all);
    const Vector sub_y = train_y(inner_train);
    const Matrix val_X = train_X(inner_val, Eigen::all);
    const Vector val_y = train_y(inner_val);
    double best = -1.0;
    for (double lambda : cfg.lambda_grid) {
      const LassoResult fit = lasso_select(sub_X, sub_y, lambda);
      if (fit.support.empty()) continue;
      const Vector s = train_predict(cfg.classifier, select_columns(sub_X, fit.support), sub_y,
                                     select_columns(val_X, fit.support));
      const double acc = accuracy(s, val_y);
      if (acc >= best) {
        best = acc;
        res.lambda = lambda;
      }
    }
    if (res.lambda) {
      const LassoResult fit = lasso_select(train_X, train_y, *res.lambda);
      res.lasso_converged = fit.converged;
      if (!fit.support.empty()) {
        train_X = select_columns(train_X, fit.support);
        test_X = select_columns(test_X, fit.support);
      }
    }
  }
  res.features_used = static_cast<std::size_t>(train_X.cols());
  res.timings_ms["selection"] = ms_since(t0);

  t0 = Clock::now();
  const Vector scores = train_predict(cfg.classifier, train_X, train_y, test_X);
  res.timings_ms["fit_predict"] = ms_since(t0);

  t0 = Clock::now();
  std::vector<std::string> predicted, truth;
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    const double s = scores[static_cast<Eigen::Index>(i)];
    res.test_ids.push_back(table.ids[split.test[i]]);
    res.test_scores.push_back(s);
    predicted.push_back(s >= 0.5 ? positive : negative);
    truth.push_back(table.labels[split.test[i]]);
  }
  res.metrics = metrics(res.test_scores, predicted, truth);
  res.timings_ms["metrics"] = ms_since(t0);
  return res;
}

nlohmann::ordered_json metrics_json(const MetricsReport& m) {
  nlohmann::ordered_json j;
  j["accuracy"] = m.accuracy;
  j["auc"] = m.auc;
  j["recall"] = m.recall;
  j["precision"] = m.precision;
  j["f1"] = m.f1;
  return j;
}

std::string format_metrics_table(const std::vector<MetricsRow>& rows) {
  std::size_t width = std::string("Method").size();
  for (const MetricsRow& r : rows) width = std::max(width, r.method.size());
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s | %8s | %8s | %8s | %8s | %8s\n", static_cast<int>(width), "Method",
                "Accuracy", "AUC", "Recall", "Prec.", "F1");
  out << buf << std::string(width, '-') << "-+----------+----------+----------+----------+---------\n";
  for (const MetricsRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s | %8.4f | %8.4f | %8.4f | %8.4f | %8.4f\n", static_cast<int>(width),
                  r.method.c_str(), r.metrics.accuracy, r.metrics.auc, r.metrics.recall, r.metrics.precision,
                  r.metrics.f1);
    out << buf;
  }
  return out.str();
}

}  // namespace phfeat
