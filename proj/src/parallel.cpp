#include "phfeat/parallel.hpp"

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace phfeat::batch {

namespace {

// Runs body(i) for i in [0, n) across threads. The first exception thrown by
// any iteration is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  std::exception_ptr failure;
  std::mutex failure_lock;
  const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> guard(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<Diagram> cubical(std::span<const GrayImage> images) {
  std::vector<Diagram> out(images.size());
  parallel_for(images.size(), [&](std::size_t i) { out[i] = cubical_persistence(images[i]); });
  return out;
}

std::vector<Diagram> cubical_serial(std::span<const GrayImage> images) {
  std::vector<Diagram> out;
  out.reserve(images.size());
  for (const GrayImage& img : images) out.push_back(cubical_persistence(img));
  return out;
}

std::vector<Diagram> rips(std::span<const PointCloud> clouds, std::optional<double> max_scale) {
  std::vector<Diagram> out(clouds.size());
  parallel_for(clouds.size(), [&](std::size_t i) { out[i] = rips_persistence(clouds[i], max_scale); });
  return out;
}

std::vector<Diagram> rips_serial(std::span<const PointCloud> clouds, std::optional<double> max_scale) {
  std::vector<Diagram> out;
  out.reserve(clouds.size());
  for (const PointCloud& c : clouds) out.push_back(rips_persistence(c, max_scale));
  return out;
}

std::vector<FeatureVector> features(std::span<const SubjectBarcodes> subjects, CombineMode mode,
                                    const VectorizerConfig& cfg, const FeatureGrids& grids) {
  std::vector<FeatureVector> out(subjects.size());
  parallel_for(subjects.size(), [&](std::size_t i) { out[i] = phfeat::features(subjects[i], mode, cfg, grids); });
  return out;
}

std::vector<FeatureVector> features_serial(std::span<const SubjectBarcodes> subjects, CombineMode mode,
                                           const VectorizerConfig& cfg, const FeatureGrids& grids) {
  std::vector<FeatureVector> out;
  out.reserve(subjects.size());
  for (const SubjectBarcodes& s : subjects) out.push_back(phfeat::features(s, mode, cfg, grids));
  return out;
}

}  // namespace phfeat::batch
