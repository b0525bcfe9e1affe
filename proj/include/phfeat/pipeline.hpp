#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phfeat/persistence.hpp"
#include "phfeat/vectorize.hpp"

namespace phfeat {

// Barcodes of one subject: one diagram per slice (cubical) or per slice and
// landmark pattern (Rips), in a fixed order shared by all subjects.
struct SubjectBarcodes {
  std::string id;
  std::string label;
  std::vector<Diagram> per_slice;
};

// Sampling grids for dimension 0 and 1, fixed before any test subject is vectorized.
struct FeatureGrids {
  SamplingGrid dim0{Range{}, SamplingGrid::kDefaultCount};
  SamplingGrid dim1{Range{}, SamplingGrid::kDefaultCount};

  const SamplingGrid& for_dim(int dim) const { return dim == 0 ? dim0 : dim1; }
};

// Global (min birth, max death) per dimension over every barcode of `subjects`.
FeatureGrids fit_grids(std::span<const SubjectBarcodes> subjects, int gamma);

enum class CombineMode { Aggregate, Concat };

std::string_view to_string(CombineMode m);
std::optional<CombineMode> parse_combine(std::string_view text);

// Aggregates all dim-0 and all dim-1 barcodes, vectorizes each: length 2 * len(v).
FeatureVector features_aggregate(const SubjectBarcodes& s, const VectorizerConfig& cfg, const FeatureGrids& grids);

// Per-slice dim-0 vectors in slice order, then per-slice dim-1 vectors:
// length 2 * slices * len(v).
FeatureVector features_concat(const SubjectBarcodes& s, const VectorizerConfig& cfg, const FeatureGrids& grids);

FeatureVector features(const SubjectBarcodes& s, CombineMode mode, const VectorizerConfig& cfg,
                       const FeatureGrids& grids);

// Throws ShapeError when subjects disagree on slice count.
void check_uniform_slices(std::span<const SubjectBarcodes> subjects);

// Labelled feature matrix, one row per subject in manifest order.
struct FeatureTable {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Header `id,label,<columns...>`; values printed in shortest round-trip form.
void write_feature_csv(std::ostream& out, const FeatureTable& table);
FeatureTable read_feature_csv(std::istream& in);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified by label, deterministic in `seed`. Indices are returned ascending.
Split stratified_split(std::span<const std::string> labels, double test_fraction, std::uint64_t seed);

// Fisher-Yates with raw mt19937_64 draws, so results do not depend on the
// standard library's distribution implementations.
void seeded_shuffle(std::vector<std::size_t>& items, std::uint64_t seed);

struct ZScore {
  std::vector<double> means;
  std::vector<double> stds;  // population std; constant columns carry 1
};

ZScore zscore_fit(const std::vector<std::vector<double>>& train_rows);
std::vector<std::vector<double>> zscore_apply(const std::vector<std::vector<double>>& rows, const ZScore& params);

}  // namespace phfeat
