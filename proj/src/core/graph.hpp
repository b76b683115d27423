#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/domain.hpp"

namespace ppf {

// Undirected edge, stored with first < second.
using Edge = std::pair<PointId, PointId>;

inline Edge make_edge(PointId a, PointId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

enum class GraphKind { kTree, kPath, kGrid, kGeneric };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& s);

struct FactorGraph {
  std::size_t vertex_count = 0;
  GraphKind kind = GraphKind::kGeneric;
  std::vector<Edge> edges;

  // Sorts edges so that equal graphs compare equal.
  void canonicalize();
};

// Compressed adjacency lists.
class Adjacency {
 public:
  Adjacency(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::span<const PointId> neighbors(PointId v) const noexcept {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(PointId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<PointId> adj_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns false when already joined.
  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

// Connected, acyclic and exactly n-1 edges.
bool is_spanning_tree(std::size_t vertex_count, std::span<const Edge> edges);

}  // namespace ppf
