#pragma once

#include <map>
#include <vector>

#include "core/clumping.hpp"
#include "core/graph.hpp"
#include "core/indexing.hpp"

namespace ppf {

// Spanning tree from a connected clumping: at every level, each tree of the
// forest inside a clump is hooked from its max-index vertex to the clump's
// max-index vertex. Throws DisconnectedClumping if a forest remains.
FactorGraph tree_from_clumping(const Clumping& clumping, const IndexAssignment& idx);

struct PathFactor {
  FactorGraph path;
  std::vector<PointId> order;  // visiting order; path edges join neighbors
};

// Post-order depth-first traversal from the max-index root, children taken in
// increasing index of their subtree maximum. Throws NotATree.
PathFactor path_from_tree(const FactorGraph& tree, const IndexAssignment& idx);

struct TreeStats {
  PointId root = 0;
  std::vector<PointId> parent;  // parent[root] == root
  std::vector<std::size_t> depth;
  std::size_t height = 0;
  std::map<std::size_t, std::size_t> degree_histogram;  // degree -> vertex count
  std::size_t max_degree = 0;
  // Vertices whose upward path differs from their trunk.
  std::vector<PointId> trunk_violations;
  bool trunk_property() const noexcept { return trunk_violations.empty(); }
};

// Max-index vertex of v's clump at each level of the clumping.
std::vector<PointId> trunk(const Clumping& clumping, PointId v);
std::vector<PointId> upward_path(const TreeStats& stats, PointId v);

// Root, degrees, height, and the trunk check for every vertex: v's upward
// path in the tree must visit exactly the distinct clump maxima of its trunk.
TreeStats tree_stats(const FactorGraph& tree, const Clumping& clumping, const IndexAssignment& idx);

}  // namespace ppf
