#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace phfeat {

// Disjoint sets with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Links the two roots; `keep` names which root survives when both differ.
  // Returns false when a and b already share a set.
  bool unite_into(std::size_t keep, std::size_t other) {
    keep = find(keep);
    other = find(other);
    if (keep == other) return false;
    parent_[other] = keep;
    size_[keep] += size_[other];
    return true;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace phfeat
