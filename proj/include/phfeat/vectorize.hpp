#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phfeat/barcode.hpp"

namespace phfeat {

// gamma evenly spaced samples t_1 = t_min, ..., t_gamma = t_max.
class SamplingGrid {
 public:
  static constexpr int kDefaultCount = 100;

  SamplingGrid(Range range, int count = kDefaultCount);

  const Range& range() const { return range_; }
  int count() const { return count_; }
  double at(int j) const;
  std::vector<double> samples() const;

 private:
  Range range_;
  int count_;
};

struct FeatureVector {
  std::vector<double> values;
  std::vector<std::string> labels;

  std::size_t size() const { return values.size(); }
  void append(const FeatureVector& other);
};

struct LandscapeConfig {
  int levels = 5;
};

struct TropicalConfig {
  int r = 1;
};

enum class Vectorizer { BettiCurve, PersistentStats, EntropySummary, Landscape, Tropical };

// Short method tags used in feature labels and on the command line: bc ps es pl tc.
std::string_view tag(Vectorizer v);
std::optional<Vectorizer> parse_vectorizer(std::string_view text);

// `d{dim}_{method}_{index}` with a zero-padded three-digit index.
std::string feature_label(int dim, Vectorizer method, std::size_t index);

inline constexpr std::size_t kPersistentStatsLength = 38;
inline constexpr std::size_t kTropicalLength = 7;

// Count of bars with birth <= t < death at each sample.
FeatureVector betti_curve(const Barcode& b, const SamplingGrid& grid);

// Four series (births, deaths, midpoints, lifespans), nine statistics each:
// mean, population std, median, IQR, range, p10, p25, p75, p90. Then bar
// count and persistent entropy.
FeatureVector persistent_statistics(const Barcode& b);

// Persistent entropy -sum (l/L) ln(l/L) over lifespans; 0 when L == 0.
double persistent_entropy(const Barcode& b);

FeatureVector entropy_summary(const Barcode& b, const SamplingGrid& grid);

// Levels are laid out one after the other, each sampled on `grid`.
FeatureVector landscape(const Barcode& b, const SamplingGrid& grid, const LandscapeConfig& cfg);

FeatureVector tropical_coordinates(const Barcode& b, const TropicalConfig& cfg);

// Linear interpolation between closest ranks (p in [0, 1]); input must be sorted.
double percentile_sorted(const std::vector<double>& sorted, double p);

struct VectorizerConfig {
  Vectorizer method = Vectorizer::BettiCurve;
  int gamma = SamplingGrid::kDefaultCount;
  LandscapeConfig landscape;
  TropicalConfig tropical;

  bool needs_grid() const;
  std::size_t length() const;
};

// Dispatches on cfg.method. Grid-free methods ignore `grid`.
FeatureVector vectorize(const Barcode& b, const VectorizerConfig& cfg, const SamplingGrid& grid);

}  // namespace phfeat
