#pragma once

#include <optional>
#include <span>
#include <vector>

#include "phfeat/persistence.hpp"
#include "phfeat/pipeline.hpp"

// Batch kernels over independent images, clouds and subjects. Each has an
// OpenMP version and a serial reference that must produce identical output;
// results are always indexed like the input.
namespace phfeat::batch {

std::vector<Diagram> cubical(std::span<const GrayImage> images);
std::vector<Diagram> cubical_serial(std::span<const GrayImage> images);

std::vector<Diagram> rips(std::span<const PointCloud> clouds, std::optional<double> max_scale = std::nullopt);
std::vector<Diagram> rips_serial(std::span<const PointCloud> clouds, std::optional<double> max_scale = std::nullopt);

std::vector<FeatureVector> features(std::span<const SubjectBarcodes> subjects, CombineMode mode,
                                    const VectorizerConfig& cfg, const FeatureGrids& grids);
std::vector<FeatureVector> features_serial(std::span<const SubjectBarcodes> subjects, CombineMode mode,
                                           const VectorizerConfig& cfg, const FeatureGrids& grids);

int max_threads();

}  // namespace phfeat::batch
