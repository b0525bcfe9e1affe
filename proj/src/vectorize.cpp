#include "phfeat/vectorize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "phfeat/error.hpp"

namespace phfeat {

SamplingGrid::SamplingGrid(Range range, int count) : range_(range), count_(count) {
  if (count < 2) throw ParameterError("sampling grid needs at least 2 samples");
  if (!(range.t_min <= range.t_max)) throw ParameterError("sampling range with t_min > t_max");
}

double SamplingGrid::at(int j) const {
  if (j == count_ - 1) return range_.t_max;
  const double f = static_cast<double>(j) / static_cast<double>(count_ - 1);
  return range_.t_min + (range_.t_max - range_.t_min) * f;
}

std::vector<double> SamplingGrid::samples() const {
  std::vector<double> out(static_cast<std::size_t>(count_));
  for (int j = 0; j < count_; ++j) out[static_cast<std::size_t>(j)] = at(j);
  return out;
}

void FeatureVector::append(const FeatureVector& other) {
  values.insert(values.end(), other.values.begin(), other.values.end());
  labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

std::string_view tag(Vectorizer v) {
  switch (v) {
    case Vectorizer::BettiCurve: return "bc";
    case Vectorizer::PersistentStats: return "ps";
    case Vectorizer::EntropySummary: return "es";
    case Vectorizer::Landscape: return "pl";
    case Vectorizer::Tropical: return "tc";
  }
  return "??";
}

std::optional<Vectorizer> parse_vectorizer(std::string_view text) {
  for (Vectorizer v : {Vectorizer::BettiCurve, Vectorizer::PersistentStats, Vectorizer::EntropySummary,
                       Vectorizer::Landscape, Vectorizer::Tropical}) {
    if (tag(v) == text) return v;
  }
  return std::nullopt;
}

std::string feature_label(int dim, Vectorizer method, std::size_t index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "d%d_%s_%03zu", dim, std::string(tag(method)).c_str(), index);
  return buf;
}

namespace {

FeatureVector labelled(int dim, Vectorizer method, std::vector<double> values) {
  FeatureVector fv;
  fv.labels.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) fv.labels.push_back(feature_label(dim, method, i));
  fv.values = std::move(values);
  return fv;
}

double total_lifespan(const Barcode& b) {
  double total = 0.0;
  for (const Bar& bar : b.bars()) total += bar.lifespan();
  return total;
}

}  // namespace

FeatureVector betti_curve(const Barcode& b, const SamplingGrid& grid) {
  std::vector<double> counts(static_cast<std::size_t>(grid.count()), 0.0);
  for (int j = 0; j < grid.count(); ++j) {
    const double t = grid.at(j);
    for (const Bar& bar : b.bars()) {
      if (bar.birth <= t && t < bar.death) counts[static_cast<std::size_t>(j)] += 1.0;
    }
  }
  return labelled(b.dim(), Vectorizer::BettiCurve, std::move(counts));
}

double percentile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

double persistent_entropy(const Barcode& b) {
  const double total = total_lifespan(b);
  if (!(total > 0.0)) return 0.0;
  double e = 0.0;
  for (const Bar& bar : b.bars()) {
    const double share = bar.lifespan() / total;
    if (share > 0.0) e -= share * std::log(share);
  }
  return e;
}

FeatureVector persistent_statistics(const Barcode& b) {
  std::vector<double> values;
  values.reserve(kPersistentStatsLength);
  if (b.empty()) {
    values.assign(kPersistentStatsLength, 0.0);
    return labelled(b.dim(), Vectorizer::PersistentStats, std::move(values));
  }
  const std::array<std::function<double(const Bar&)>, 4> series = {
      [](const Bar& x) { return x.birth; }, [](const Bar& x) { return x.death; },
      [](const Bar& x) { return x.midpoint(); }, [](const Bar& x) { return x.lifespan(); }};
  const double n = static_cast<double>(b.size());
  for (const auto& get : series) {
    std::vector<double> xs;
    xs.reserve(b.size());
    for (const Bar& bar : b.bars()) xs.push_back(get(bar));
    std::sort(xs.begin(), xs.end());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double p25 = percentile_sorted(xs, 0.25);
    const double p75 = percentile_sorted(xs, 0.75);
    values.insert(values.end(), {mean, std::sqrt(var / n), percentile_sorted(xs, 0.5), p75 - p25,
                                 xs.back() - xs.front(), percentile_sorted(xs, 0.10), p25, p75,
                                 percentile_sorted(xs, 0.90)});
  }
  values.push_back(n);
  values.push_back(persistent_entropy(b));
  return labelled(b.dim(), Vectorizer::PersistentStats, std::move(values));
}

FeatureVector entropy_summary(const Barcode& b, const SamplingGrid& grid) {
  std::vector<double> values(static_cast<std::size_t>(grid.count()), 0.0);
  const double total = total_lifespan(b);
  if (total > 0.0) {
    for (int j = 0; j < grid.count(); ++j) {
      const double t = grid.at(j);
      double s = 0.0;
      for (const Bar& bar : b.bars()) {
        const double share = bar.lifespan() / total;
        if (bar.birth <= t && t < bar.death && share > 0.0) s -= share * std::log(share);
      }
      values[static_cast<std::size_t>(j)] = s;
    }
  }
  return labelled(b.dim(), Vectorizer::EntropySummary, std::move(values));
}

FeatureVector landscape(const Barcode& b, const SamplingGrid& grid, const LandscapeConfig& cfg) {
  if (cfg.levels < 1) throw ParameterError("landscape needs at least one level");
  const auto levels = static_cast<std::size_t>(cfg.levels);
  const auto gamma = static_cast<std::size_t>(grid.count());
  std::vector<double> values(levels * gamma, 0.0);
  std::vector<double> tents;
  for (std::size_t j = 0; j < gamma; ++j) {
    const double t = grid.at(static_cast<int>(j));
    tents.clear();
    for (const Bar& bar : b.bars()) {
      const double tent = std::min(t - bar.birth, bar.death - t);
      if (tent > 0.0) tents.push_back(tent);
    }
    const std::size_t keep = std::min(levels, tents.size());
    std::partial_sort(tents.begin(), tents.begin() + static_cast<long>(keep), tents.end(), std::greater<>());
    for (std::size_t i = 0; i < keep; ++i) values[i * gamma + j] = tents[i];
  }
  return labelled(b.dim(), Vectorizer::Landscape, std::move(values));
}

FeatureVector tropical_coordinates(const Barcode& b, const TropicalConfig& cfg) {
  if (cfg.r < 1) throw ParameterError("tropical coordinate r must be a positive integer");
  std::vector<double> values(kTropicalLength, 0.0);
  if (!b.empty()) {
    std::vector<double> life;
    life.reserve(b.size());
    for (const Bar& bar : b.bars()) life.push_back(bar.lifespan());
    std::sort(life.begin(), life.end(), std::greater<>());
    // F1..F4: sums of the k largest lifespans; missing bars count as zero.
    double running = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (k < life.size()) running += life[k];
      values[k] = running;
    }
    const double r = cfg.r;
    double sum_life = 0.0;
    double sum_low = 0.0;
    double peak = -INFINITY;
    for (const Bar& bar : b.bars()) {
      const double low = std::min(r * bar.lifespan(), bar.birth);
      sum_life += bar.lifespan();
      sum_low += low;
      peak = std::max(peak, low + bar.lifespan());
    }
    double spread = 0.0;
    for (const Bar& bar : b.bars()) spread += peak - (std::min(r * bar.lifespan(), bar.birth) + bar.lifespan());
    values[4] = sum_life;
    values[5] = sum_low;
    values[6] = spread;
  }
  return labelled(b.dim(), Vectorizer::Tropical, std::move(values));
}

bool VectorizerConfig::needs_grid() const {
  return method == Vectorizer::BettiCurve || method == Vectorizer::EntropySummary ||
         method == Vectorizer::Landscape;
}

std::size_t VectorizerConfig::length() const {
  switch (method) {
    case Vectorizer::BettiCurve:
    case Vectorizer::EntropySummary: return static_cast<std::size_t>(gamma);
    case Vectorizer::Landscape: return static_cast<std::size_t>(gamma) * static_cast<std::size_t>(landscape.levels);
    case Vectorizer::PersistentStats: return kPersistentStatsLength;
    case Vectorizer::Tropical: return kTropicalLength;
  }
  return 0;
}

FeatureVector vectorize(const Barcode& b, const VectorizerConfig& cfg, const SamplingGrid& grid) {
  switch (cfg.method) {
    case Vectorizer::BettiCurve: return betti_curve(b, grid);
    case Vectorizer::PersistentStats: return persistent_statistics(b);
    case Vectorizer::EntropySummary: return entropy_summary(b, grid);
    case Vectorizer::Landscape: return landscape(b, grid, cfg.landscape);
    case Vectorizer::Tropical: return tropical_coordinates(b, cfg.tropical);
  }
  throw ParameterError("unknown vectorizer");
}

}  // namespace phfeat
