#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "phfeat/persistence.hpp"
#include "phfeat/union_find.hpp"

namespace phfeat {

double euclidean(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double max_pairwise_distance(const PointCloud& cloud) {
  double best = 0.0;
  const auto& pts = cloud.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, euclidean(pts[i], pts[j]));
  return best;
}

namespace {

struct Edge {
  double length;
  std::uint32_t i;
  std::uint32_t j;
};

// Triangles are ordered by diameter, then lexicographically by vertices.
struct Triangle {
  double diameter;
  std::uint32_t a, b, c;  // a < b < c

  friend bool operator<(const Triangle& x, const Triangle& y) {
    if (x.diameter != y.diameter) return x.diameter < y.diameter;
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
  friend bool operator==(const Triangle& x, const Triangle& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

using Cocycle = std::vector<Triangle>;  // sorted ascending; pivot is front()

class DistanceMatrix {
 public:
  explicit DistanceMatrix(const std::vector<Point2>& pts) : n_(pts.size()), d_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) d_[i * n_ + j] = d_[j * n_ + i] = euclidean(pts[i], pts[j]);
  }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

Cocycle coboundary(const Edge& e, const DistanceMatrix& dist, double max_scale) {
  Cocycle out;
  for (std::uint32_t k = 0; k < dist.size(); ++k) {
    if (k == e.i || k == e.j) continue;
    const double dik = dist(e.i, k);
    const double djk = dist(e.j, k);
    if (dik > max_scale || djk > max_scale) continue;
    std::array<std::uint32_t, 3> v{e.i, e.j, k};
    std::sort(v.begin(), v.end());
    out.push_back({std::max({e.length, dik, djk}), v[0], v[1], v[2]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t triangle_code(const Triangle& t, std::uint64_t n) { return (t.a * n + t.b) * n + t.c; }

}  // namespace

namespace detail {

Diagram rips_persistence(const PointCloud& cloud, std::optional<double> max_scale, Fault fault) {
  Diagram out;
  const std::size_t n = cloud.points.size();
  if (n == 0) return out;
  const double scale = max_scale ? *max_scale : max_pairwise_distance(cloud);
  const DistanceMatrix dist(cloud.points);

  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (dist(i, j) <= scale) edges.push_back({dist(i, j), i, j});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.length < y.length; });

  // H0: every vertex is born at 0, so the elder rule reduces to Kruskal.
  UnionFind components(n);
  std::vector<bool> negative(edges.size(), false);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (components.unite(edges[k].i, edges[k].j)) {
      negative[k] = true;
      if (edges[k].length > 0.0) out.dim0.push_back(finite_bar(0.0, edges[k].length));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (components.find(v) == v) out.dim0.push_back(essential_bar(0.0, scale));
  }

  // H1 by persistent cohomology: coboundary columns of the positive edges in
  // reverse filtration order, pivot = earliest cofacet. H0 death edges are
  // cleared. Pairs coincide with those of the homology reduction.
  std::unordered_map<std::uint64_t, Cocycle> by_pivot;
  std::vector<Bar> dim1;
  Cocycle scratch;
  // Adds earlier columns until the pivot is new; `limit` >= 0 caps the additions.
  auto reduce = [&](Cocycle& col, int limit) {
    int additions = 0;
    while (!col.empty() && additions != limit) {
      const auto it = by_pivot.find(triangle_code(col.front(), n));
      if (it == by_pivot.end()) break;
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
      ++additions;
    }
    return additions;
  };
  for (std::size_t k = edges.size(); k-- > 0;) {
    if (negative[k]) continue;
    const Edge& e = edges[k];
    const Cocycle initial = coboundary(e, dist, scale);
    Cocycle col = initial;
    int additions = reduce(col, -1);
    if (fault == Fault::ReductionOffByOne && additions > 0) {
      col = initial;
      reduce(col, additions - 1);
    }
    if (col.empty()) {
      dim1.push_back(essential_bar(e.length, scale));
      continue;
    }
    const double death = col.front().diameter;
    if (death > e.length) dim1.push_back(finite_bar(e.length, death));
    by_pivot.insert_or_assign(triangle_code(col.front(), n), std::move(col));
  }
  // Cohomology visits edges latest-first; report bars in filtration order.
  std::reverse(dim1.begin(), dim1.end());
  out.dim1 = Barcode(1, std::move(dim1));
  return out;
}

}  // namespace detail

Diagram rips_persistence(const PointCloud& cloud, std::optional<double> max_scale) {
  return detail::rips_persistence(cloud, max_scale, detail::Fault::None);
}

}  // namespace phfeat
