#include "phfeat/oracle.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>

#include "phfeat/error.hpp"

namespace phfeat::oracle {

namespace {

// Label propagation: merging relabels every member of the second class.
// Quadratic but obviously correct for the small inputs the oracles see.
class NaiveComponents {
 public:
  explicit NaiveComponents(std::size_t n) : label_(n) {
    for (std::size_t i = 0; i < n; ++i) label_[i] = i;
  }
  bool merge(std::size_t a, std::size_t b) {
    const std::size_t la = label_[a];
    const std::size_t lb = label_[b];
    if (la == lb) return false;
    for (std::size_t& l : label_) {
      if (l == lb) l = la;
    }
    return true;
  }

 private:
  std::vector<std::size_t> label_;
};

}  // namespace

Betti betti_cubical(const GrayImage& img, double t) {
  const int w = img.width();
  const int h = img.height();
  auto on = [&](int x, int y) { return img.at(x, y) <= t; };
  auto id = [&](int x, int y) { return static_cast<std::size_t>(y) * w + x; };

  long vertices = 0, edges = 0, squares = 0;
  NaiveComponents comp(static_cast<std::size_t>(w) * h);
  long merges = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!on(x, y)) continue;
      ++vertices;
      if (x + 1 < w && on(x + 1, y)) {
        ++edges;
        merges += comp.merge(id(x, y), id(x + 1, y));
      }
      if (y + 1 < h && on(x, y + 1)) {
        ++edges;
        merges += comp.merge(id(x, y), id(x, y + 1));
      }
      if (x + 1 < w && y + 1 < h && on(x + 1, y) && on(x, y + 1) && on(x + 1, y + 1)) ++squares;
    }
  }
  const long b0 = vertices - merges;
  const long euler = vertices - edges + squares;
  return Betti{static_cast<int>(b0), static_cast<int>(b0 - euler)};
}

std::vector<double> rips_h0_deaths(const PointCloud& cloud) {
  const auto& pts = cloud.points;
  if (pts.size() < 2) throw ParameterError("Kruskal oracle needs at least two points");
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) edges.emplace_back(euclidean(pts[i], pts[j]), i, j);
  std::sort(edges.begin(), edges.end());
  NaiveComponents comp(pts.size());
  std::vector<double> deaths;
  for (const auto& [len, i, j] : edges) {
    if (comp.merge(i, j)) deaths.push_back(len);
  }
  return deaths;
}

Diagram rips_full_reduction(const PointCloud& cloud, std::optional<double> max_scale) {
  Diagram out;
  const auto& pts = cloud.points;
  const std::size_t n = pts.size();
  if (n == 0) return out;
  double scale = 0.0;
  if (max_scale) {
    scale = *max_scale;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) scale = std::max(scale, euclidean(pts[i], pts[j]));
  }

  struct Simplex {
    double value;
    int dim;
    std::vector<std::size_t> vertices;
  };
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < n; ++i) simplices.push_back({0.0, 0, {i}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(pts[i], pts[j]);
      if (d <= scale) simplices.push_back({d, 1, {i, j}});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const double d = std::max({euclidean(pts[i], pts[j]), euclidean(pts[i], pts[k]), euclidean(pts[j], pts[k])});
        if (d <= scale) simplices.push_back({d, 2, {i, j, k}});
      }
  std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    return std::tie(a.value, a.dim, a.vertices) < std::tie(b.value, b.dim, b.vertices);
  });

  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t s = 0; s < simplices.size(); ++s) index[simplices[s].vertices] = s;

  // Dense Z/2 columns; lowest one = largest row index set.
  const std::size_t m = simplices.size();
  std::vector<std::vector<char>> columns(m, std::vector<char>(m, 0));
  for (std::size_t s = 0; s < m; ++s) {
    const auto& v = simplices[s].vertices;
    if (v.size() < 2) continue;
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<std::size_t> face;
      for (std::size_t q = 0; q < v.size(); ++q)
        if (q != drop) face.push_back(v[q]);
      columns[s][index.at(face)] = 1;
    }
  }
  auto low = [&](std::size_t c) -> long {
    for (std::size_t r = m; r-- > 0;)
      if (columns[c][r]) return static_cast<long>(r);
    return -1;
  };
  std::vector<long> lows(m, -1);
  std::vector<bool> paired(m, false);
  for (std::size_t c = 0; c < m; ++c) {
    bool changed = true;
    while (changed) {
      changed = false;
      const long l = low(c);
      if (l < 0) break;
      for (std::size_t prev = 0; prev < c; ++prev) {
        if (lows[prev] == l) {
          for (std::size_t r = 0; r < m; ++r) columns[c][r] ^= columns[prev][r];
          changed = true;
          break;
        }
      }
    }
    lows[c] = low(c);
    if (lows[c] >= 0) {
      paired[c] = true;
      paired[static_cast<std::size_t>(lows[c])] = true;
      const Simplex& birth = simplices[static_cast<std::size_t>(lows[c])];
      const Simplex& death = simplices[c];
      if (death.value > birth.value) {
        Barcode& target = birth.dim == 0 ? out.dim0 : out.dim1;
        target.push_back(finite_bar(birth.value, death.value));
      }
    }
  }
  for (std::size_t s = 0; s < m; ++s) {
    if (paired[s]) continue;
    if (simplices[s].dim == 0) out.dim0.push_back(essential_bar(simplices[s].value, scale));
    if (simplices[s].dim == 1) out.dim1.push_back(essential_bar(simplices[s].value, scale));
  }
  return out;
}

int alive_count(const Barcode& barcode, double t) {
  return static_cast<int>(std::count_if(barcode.bars().begin(), barcode.bars().end(),
                                        [t](const Bar& b) { return b.alive_at(t); }));
}

}  // namespace phfeat::oracle
