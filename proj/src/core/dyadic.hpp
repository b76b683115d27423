#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core/clumping.hpp"
#include "core/graph.hpp"
#include "core/index_value.hpp"
#include "core/indexing.hpp"

namespace ppf {

using VertexPos = std::uint32_t;
using VertexPair = std::pair<VertexPos, VertexPos>;

struct ContractedVertex {
  std::vector<PointId> members;  // ascending id
  IndexValue representative;
};

// Rooted tree whose vertices are clumps of points. parent[root] == root.
struct ContractedTree {
  int level = 0;
  std::vector<ContractedVertex> vertices;
  std::vector<VertexPos> parent;
  VertexPos root = 0;

  std::size_t size() const noexcept { return vertices.size(); }
  std::vector<Edge> edges() const;
};

// The tree of single points, rooted at the max-index point.
ContractedTree initial_tree(const FactorGraph& tree, const IndexAssignment& idx);

// Subtree of a contracted tree that is still being paired.
class WorkingTree {
 public:
  explicit WorkingTree(const ContractedTree& tree);

  const ContractedTree& tree() const noexcept { return *tree_; }
  bool alive(VertexPos v) const noexcept { return alive_[v]; }
  std::size_t alive_count() const noexcept { return alive_count_; }
  std::size_t alive_children(VertexPos v) const noexcept { return children_[v]; }
  bool is_leaf(VertexPos v) const noexcept { return alive_[v] && children_[v] == 0 && v != tree_->root; }
  std::vector<VertexPos> alive_vertices() const;
  void remove(VertexPos v);

 private:
  const ContractedTree* tree_;
  std::vector<bool> alive_;
  std::vector<std::size_t> children_;
  std::size_t alive_count_ = 0;
};

struct PairingRound {
  std::vector<VertexPos> snapshot;         // alive vertices when the round began
  std::vector<VertexPair> sibling_pairs;   // phase 1, larger representative first
  std::vector<VertexPair> leaf_parent_pairs;  // phase 2, (leaf, parent)
  std::vector<VertexPos> removed;
  std::size_t pair_count() const noexcept { return sibling_pairs.size() + leaf_parent_pairs.size(); }
};

// Phase 1 pairs sibling leaves by descending representative; phase 2, on the
// post-phase-1 snapshot, pairs a leaf of the round's tree with its parent when
// it is the parent's only remaining child. Paired vertices are removed from
// `working`.
PairingRound pairing_round(WorkingTree& working);

struct LevelPairing {
  std::vector<PairingRound> rounds;
  std::vector<VertexPair> pairs;
  std::optional<VertexPos> leftover;  // odd vertex count only
};

// Runs rounds until the working tree is empty (or one vertex remains).
LevelPairing pair_level(const ContractedTree& tree);

// Fuses every pair into one vertex; loops vanish and parallel edges merge.
// `leftover` passes through unchanged. Throws ImperfectPairing when a vertex
// is neither paired nor the leftover.
ContractedTree contract(const ContractedTree& tree, std::span<const VertexPair> pairs,
                        std::optional<VertexPos> leftover = std::nullopt);

// Every pair of every round is a sibling pair or a (leaf, parent) pair of the
// round's working tree.
bool pairs_are_local(const ContractedTree& tree, const LevelPairing& pairing);

struct DyadicOptions {
  // Contractions per recorded level; the last entry repeats. Empty means 1.
  std::vector<int> schedule;
  // Allow N that is not a power of two; odd leftovers become undersized clumps.
  bool allow_remainder = false;
};

struct DyadicResult {
  Clumping clumping;
  std::vector<ContractedTree> trees;  // tree paired at each contraction
  std::vector<LevelPairing> pairings;
};

DyadicResult dyadic_clumping(const FactorGraph& tree, const IndexAssignment& idx, const DyadicOptions& options = {});

}  // namespace ppf
