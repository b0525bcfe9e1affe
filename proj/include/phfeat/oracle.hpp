#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "phfeat/barcode.hpp"
#include "phfeat/image.hpp"
#include "phfeat/persistence.hpp"
#include "phfeat/ulbp.hpp"

// Brute-force references for the persistence engines. Nothing here shares
// code with the engines beyond the data types and the distance function.
namespace phfeat::oracle {

struct Betti {
  int b0 = 0;
  int b1 = 0;
  friend bool operator==(const Betti&, const Betti&) = default;
};

// Betti numbers of the sublevel cubical complex at threshold t, from a
// component count and the Euler characteristic V - E + F.
Betti betti_cubical(const GrayImage& img, double t);

// Kruskal MST edge lengths, ascending. Requires at least two points.
std::vector<double> rips_h0_deaths(const PointCloud& cloud);

// Explicit boundary-matrix reduction of the full Rips 2-skeleton (homology,
// no clearing). Same conventions as the engine: zero-length finite pairs
// dropped, essential classes capped at max_scale.
Diagram rips_full_reduction(const PointCloud& cloud, std::optional<double> max_scale = std::nullopt);

// Number of bars alive at t, counting essential bars as alive beyond the cap.
int alive_count(const Barcode& barcode, double t);

}  // namespace phfeat::oracle
