// OpenMP batch kernels against their serial references.
#include <benchmark/benchmark.h>

#include <random>

#include "phfeat/image.hpp"
#include "phfeat/parallel.hpp"
#include "phfeat/ulbp.hpp"

using namespace phfeat;

namespace {

const std::vector<GrayImage>& images() {
  static const std::vector<GrayImage> set = [] {
    std::vector<GrayImage> v;
    for (int k = 0; k < 64; ++k) v.push_back(synth_texture(k % 2 ? TextureClass::Holes2 : TextureClass::Holes1, 64, k));
    return v;
  }();
  return set;
}

const std::vector<PointCloud>& clouds() {
  static const std::vector<PointCloud> set = [] {
    std::vector<PointCloud> v;
    for (const GrayImage& img : images()) v.push_back(select_landmarks(img, UlbpPattern{4, 1}));
    for (auto& c : v)
      if (c.points.size() > 150) c.points.resize(150);
    return v;
  }();
  return set;
}

const std::vector<SubjectBarcodes>& subjects() {
  static const std::vector<SubjectBarcodes> set = [] {
    const auto d = batch::cubical(images());
    std::vector<SubjectBarcodes> v;
    for (int s = 0; s < 16; ++s) {
      SubjectBarcodes sb{"s" + std::to_string(s), s % 2 ? "a" : "b", {}};
      for (int k = 0; k < 4; ++k) sb.per_slice.push_back(d[s * 4 + k]);
      v.push_back(std::move(sb));
    }
    return v;
  }();
  return set;
}

void BM_cubical_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(batch::cubical_serial(images()));
}
void BM_cubical_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(batch::cubical(images()));
}
void BM_rips_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(batch::rips_serial(clouds()));
}
void BM_rips_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(batch::rips(clouds()));
}

void features(benchmark::State& st, bool parallel) {
  const auto grids = fit_grids(subjects(), 100);
  VectorizerConfig cfg;
  cfg.method = Vectorizer::Landscape;
  for (auto _ : st) {
    benchmark::DoNotOptimize(parallel ? batch::features(subjects(), CombineMode::Concat, cfg, grids)
                                      : batch::features_serial(subjects(), CombineMode::Concat, cfg, grids));
  }
}
void BM_features_serial(benchmark::State& st) { features(st, false); }
void BM_features_parallel(benchmark::State& st) { features(st, true); }

}  // namespace

BENCHMARK(BM_cubical_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cubical_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rips_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rips_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_features_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_features_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
