#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "phfeat/persistence.hpp"
#include "phfeat/union_find.hpp"

namespace phfeat {

namespace {

using Column = std::vector<std::uint32_t>;

// Cell layout of a W x H pixel grid: W*H vertices, (W-1)*H horizontal edges
// followed by W*(H-1) vertical edges, (W-1)*(H-1) unit squares.
struct CubicalGrid {
  int w;
  int h;
  std::size_t horizontal() const { return static_cast<std::size_t>(w - 1) * h; }
  std::size_t edges() const { return horizontal() + static_cast<std::size_t>(w) * (h - 1); }
  std::size_t squares() const { return static_cast<std::size_t>(w - 1) * (h - 1); }

  std::size_t vertex(int x, int y) const { return static_cast<std::size_t>(y) * w + x; }
  std::size_t h_edge(int x, int y) const { return static_cast<std::size_t>(y) * (w - 1) + x; }
  std::size_t v_edge(int x, int y) const { return horizontal() + static_cast<std::size_t>(y) * w + x; }

  std::pair<std::size_t, std::size_t> endpoints(std::size_t e) const {
    if (e < horizontal()) {
      const int y = static_cast<int>(e / (w - 1));
      const int x = static_cast<int>(e % (w - 1));
      return {vertex(x, y), vertex(x + 1, y)};
    }
    const std::size_t k = e - horizontal();
    const int y = static_cast<int>(k / w);
    const int x = static_cast<int>(k % w);
    return {vertex(x, y), vertex(x, y + 1)};
  }

  std::array<std::size_t, 4> square_edges(std::size_t s) const {
    const int y = static_cast<int>(s / (w - 1));
    const int x = static_cast<int>(s % (w - 1));
    return {h_edge(x, y), h_edge(x, y + 1), v_edge(x, y), v_edge(x + 1, y)};
  }
};

std::vector<std::uint32_t> order_by_value(const std::vector<double>& values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  return order;
}

void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

namespace detail {

Diagram cubical_persistence(const GrayImage& img, Fault fault) {
  const CubicalGrid grid{img.width(), img.height()};
  const std::vector<double>& pix = img.pixels();
  Diagram out;

  const auto [min_it, max_it] = std::minmax_element(pix.begin(), pix.end());
  const double cap = *max_it;

  std::vector<double> edge_value(grid.edges());
  for (std::size_t e = 0; e < edge_value.size(); ++e) {
    const auto [a, b] = grid.endpoints(e);
    edge_value[e] = std::max(pix[a], pix[b]);
  }
  const std::vector<std::uint32_t> edge_order = order_by_value(edge_value);

  // Vertex age: earlier (value, index) is older and survives a merge.
  const std::vector<std::uint32_t> vertex_order = order_by_value(pix);
  std::vector<std::uint32_t> vertex_rank(pix.size());
  for (std::uint32_t r = 0; r < vertex_order.size(); ++r) vertex_rank[vertex_order[r]] = r;

  UnionFind components(pix.size());
  std::vector<std::uint32_t> oldest(pix.size());  // per root: vertex that created the component
  std::iota(oldest.begin(), oldest.end(), 0u);
  for (std::uint32_t e : edge_order) {
    const auto [a, b] = grid.endpoints(e);
    const std::size_t ra = components.find(a);
    const std::size_t rb = components.find(b);
    if (ra == rb) continue;
    const bool a_older = vertex_rank[oldest[ra]] < vertex_rank[oldest[rb]];
    const std::size_t keep = a_older ? ra : rb;
    const std::size_t dies = a_older ? rb : ra;
    const double birth = pix[oldest[dies]];
    const std::uint32_t survivor = oldest[keep];
    components.unite_into(keep, dies);
    oldest[components.find(keep)] = survivor;
    if (edge_value[e] > birth) out.dim0.push_back(finite_bar(birth, edge_value[e]));
  }
  out.dim0.push_back(essential_bar(*min_it, cap));

  if (grid.squares() == 0) return out;

  std::vector<std::uint32_t> edge_pos(grid.edges());
  for (std::uint32_t p = 0; p < edge_order.size(); ++p) edge_pos[edge_order[p]] = p;

  std::vector<double> square_value(grid.squares());
  for (std::size_t s = 0; s < square_value.size(); ++s) {
    double v = pix[0];
    bool first = true;
    for (std::size_t e : grid.square_edges(s)) {
      v = first ? edge_value[e] : std::max(v, edge_value[e]);
      first = false;
    }
    square_value[s] = v;
  }
  const std::vector<std::uint32_t> square_order = order_by_value(square_value);

  // Standard Z/2 column reduction; columns hold edge filtration positions.
  constexpr std::uint32_t kNone = ~0u;
  std::vector<std::uint32_t> pivot_owner(grid.edges(), kNone);
  std::vector<Column> reduced(grid.squares());
  Column scratch;
  for (std::uint32_t s : square_order) {
    Column boundary;
    for (std::size_t e : grid.square_edges(s)) boundary.push_back(edge_pos[e]);
    std::sort(boundary.begin(), boundary.end());
    Column col = boundary;
    int additions = 0;
    while (!col.empty() && pivot_owner[col.back()] != kNone) {
      add_column(col, reduced[pivot_owner[col.back()]], scratch);
      ++additions;
    }
    if (fault == Fault::ReductionOffByOne && additions > 0) {
      col = boundary;
      for (int k = 0; k + 1 < additions; ++k) add_column(col, reduced[pivot_owner[col.back()]], scratch);
    }
    if (col.empty()) continue;
    const std::uint32_t pivot = col.back();
    pivot_owner[pivot] = s;
    const double birth = edge_value[edge_order[pivot]];
    if (square_value[s] > birth) out.dim1.push_back(finite_bar(birth, square_value[s]));
    reduced[s] = std::move(col);
  }
  return out;
}

}  // namespace detail

Diagram cubical_persistence(const GrayImage& img) {
  return detail::cubical_persistence(img, detail::Fault::None);
}

}  // namespace phfeat
