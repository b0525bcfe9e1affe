#pragma once

#include <optional>

#include "phfeat/barcode.hpp"
#include "phfeat/image.hpp"
#include "phfeat/ulbp.hpp"

namespace phfeat {

struct Diagram {
  Barcode dim0{0};
  Barcode dim1{1};

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

// Sublevel persistence of the V-construction cubical complex: pixels are
// vertices, edges and squares take the max of their vertex intensities.
// The single essential H0 class is capped at the image maximum. Finite bars
// of zero length are dropped.
Diagram cubical_persistence(const GrayImage& img);

// Vietoris-Rips persistence up to dimension one. An empty `max_scale` means
// the largest pairwise distance, which leaves no essential H1 classes.
// Essential classes are capped at `max_scale`. An empty cloud yields empty barcodes.
Diagram rips_persistence(const PointCloud& cloud, std::optional<double> max_scale = std::nullopt);

double max_pairwise_distance(const PointCloud& cloud);
double euclidean(const Point2& a, const Point2& b);

namespace detail {

// Deliberate defects used to check that the oracle harness notices engine bugs.
enum class Fault { None, ReductionOffByOne };

Diagram cubical_persistence(const GrayImage& img, Fault fault);
Diagram rips_persistence(const PointCloud& cloud, std::optional<double> max_scale, Fault fault);

}  // namespace detail

}  // namespace phfeat
