#include "core/dyadic.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "core/error.hpp"

namespace ppf {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<VertexPos> rooted_parents(std::size_t n, std::span<const Edge> edges, VertexPos root,
                                      std::size_t& reached) {
  const Adjacency adj(n, edges);
  std::vector<VertexPos> parent(n, root);
  std::vector<bool> seen(n, false);
  std::vector<VertexPos> queue{root};
  seen[root] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (PointId w : adj.neighbors(queue[i])) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = queue[i];
      queue.push_back(w);
    }
  }
  reached = queue.size();
  return parent;
}

}  // namespace

std::vector<Edge> ContractedTree::edges() const {
  std::vector<Edge> out;
  for (VertexPos v = 0; v < parent.size(); ++v) {
    if (v != root) out.push_back(make_edge(v, parent[v]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContractedTree initial_tree(const FactorGraph& tree, const IndexAssignment& idx) {
  const std::size_t n = tree.vertex_count;
  if (!is_spanning_tree(n, tree.edges)) throw Error(ErrorCode::kNotATree, "dyadic clumping needs a spanning tree");
  if (idx.size() != n) throw Error(ErrorCode::kBadParameters, "index does not match tree");
  ContractedTree out;
  out.vertices.resize(n);
  for (PointId v = 0; v < n; ++v) out.vertices[v] = {{v}, idx.values[v]};
  if (n == 0) return out;
  out.root = idx.order.back();
  std::size_t reached = 0;
  out.parent = rooted_parents(n, tree.edges, out.root, reached);
  return out;
}

WorkingTree::WorkingTree(const ContractedTree& tree)
    : tree_(&tree), alive_(tree.size(), true), children_(tree.size(), 0), alive_count_(tree.size()) {
  for (VertexPos v = 0; v < tree.size(); ++v) {
    if (v != tree.root) ++children_[tree.parent[v]];
  }
}

std::vector<VertexPos> WorkingTree::alive_vertices() const {
  std::vector<VertexPos> out;
  for (VertexPos v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

void WorkingTree::remove(VertexPos v) {
  if (!alive_[v]) return;
  alive_[v] = false;
  --alive_count_;
  if (v != tree_->root) --children_[tree_->parent[v]];
}

PairingRound pairing_round(WorkingTree& working) {
  const ContractedTree& tree = working.tree();
  PairingRound round;
  round.snapshot = working.alive_vertices();
  auto by_rep_desc = [&](VertexPos a, VertexPos b) {
    return tree.vertices[a].representative > tree.vertices[b].representative;
  };

  std::vector<VertexPos> leaves;
  for (VertexPos v : round.snapshot) {
    if (working.is_leaf(v)) leaves.push_back(v);
  }
  std::sort(leaves.begin(), leaves.end(), by_rep_desc);

  // Phase 1: sibling leaves, highest representatives first.
  std::map<VertexPos, std::vector<VertexPos>> siblings;
  for (VertexPos v : leaves) siblings[tree.parent[v]].push_back(v);
  for (auto& [parent, kids] : siblings) {
    for (std::size_t i = 0; i + 1 < kids.size(); i += 2) round.sibling_pairs.emplace_back(kids[i], kids[i + 1]);
  }
  std::sort(round.sibling_pairs.begin(), round.sibling_pairs.end(),
            [&](const VertexPair& a, const VertexPair& b) { return by_rep_desc(a.first, b.first); });
  for (const auto& [a, b] : round.sibling_pairs) {
    working.remove(a);
    working.remove(b);
    round.removed.push_back(a);
    round.removed.push_back(b);
  }

  // Phase 2 on the post-phase-1 snapshot: a leaf of this round's tree joins
  // its parent only when it is the parent's sole remaining child, so the
  // remaining graph stays a tree.
  for (VertexPos x : leaves) {
    if (!working.alive(x)) continue;
    const VertexPos y = tree.parent[x];
    if (working.alive(y) && working.alive_children(y) == 1) round.leaf_parent_pairs.emplace_back(x, y);
  }
  for (const auto& [x, y] : round.leaf_parent_pairs) {
    working.remove(x);
    working.remove(y);
    round.removed.push_back(x);
    round.removed.push_back(y);
  }
  return round;
}

LevelPairing pair_level(const ContractedTree& tree) {
  LevelPairing out;
  WorkingTree working(tree);
  while (working.alive_count() >= 2) {
    PairingRound round = pairing_round(working);
    if (round.pair_count() == 0) throw std::logic_error("pairing round made no progress");
    out.pairs.insert(out.pairs.end(), round.sibling_pairs.begin(), round.sibling_pairs.end());
    out.pairs.insert(out.pairs.end(), round.leaf_parent_pairs.begin(), round.leaf_parent_pairs.end());
    out.rounds.push_back(std::move(round));
  }
  if (working.alive_count() == 1) out.leftover = working.alive_vertices().front();
  return out;
}

ContractedTree contract(const ContractedTree& tree, std::span<const VertexPair> pairs,
                        std::optional<VertexPos> leftover) {
  const std::size_t n = tree.size();
  constexpr VertexPos kUnset = ~VertexPos{0};
  std::vector<VertexPos> group(n, kUnset);

  struct Fused {
    ContractedVertex vertex;
    std::vector<VertexPos> sources;
  };
  std::vector<Fused> fused;
  auto claim = [&](VertexPos v) {
    if (v >= n) throw Error(ErrorCode::kImperfectPairing, "pair references vertex " + std::to_string(v));
    if (group[v] != kUnset) throw Error(ErrorCode::kImperfectPairing, "vertex " + std::to_string(v) + " paired twice");
    group[v] = static_cast<VertexPos>(fused.size());
  };
  for (const auto& [a, b] : pairs) {
    if (a == b) throw Error(ErrorCode::kImperfectPairing, "vertex paired with itself");
    claim(a);
    claim(b);
    Fused f;
    const auto& va = tree.vertices[a];
    const auto& vb = tree.vertices[b];
    std::merge(va.members.begin(), va.members.end(), vb.members.begin(), vb.members.end(),
               std::back_inserter(f.vertex.members));
    f.vertex.representative = pair_index(va.representative, vb.representative);
    f.sources = {a, b};
    fused.push_back(std::move(f));
  }
  if (leftover) {
    claim(*leftover);
    fused.push_back({tree.vertices[*leftover], {*leftover}});
  }
  for (VertexPos v = 0; v < n; ++v) {
    if (group[v] == kUnset) throw Error(ErrorCode::kImperfectPairing, "vertex " + std::to_string(v) + " is unpaired");
  }

  // Canonical vertex order: descending representative.
  std::vector<VertexPos> order(fused.size());
  for (VertexPos i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](VertexPos a, VertexPos b) {
    return fused[a].vertex.representative > fused[b].vertex.representative;
  });
  std::vector<VertexPos> position(fused.size());
  for (VertexPos i = 0; i < order.size(); ++i) position[order[i]] = i;

  ContractedTree out;
  out.level = tree.level + 1;
  for (VertexPos i : order) out.vertices.push_back(std::move(fused[i].vertex));
  std::set<Edge> edges;
  for (VertexPos v = 0; v < n; ++v) {
    if (v == tree.root) continue;
    const VertexPos a = position[group[v]];
    const VertexPos b = position[group[tree.parent[v]]];
    if (a != b) edges.insert(make_edge(a, b));  // loops dropped, parallel copies merged
  }
  const std::vector<Edge> edge_list(edges.begin(), edges.end());
  out.root = position[group[tree.root]];
  std::size_t reached = 0;
  out.parent = rooted_parents(out.size(), edge_list, out.root, reached);
  if (edge_list.size() + 1 != out.size() || reached != out.size())
    throw std::logic_error("contraction did not produce a tree");
  return out;
}

bool pairs_are_local(const ContractedTree& tree, const LevelPairing& pairing) {
  WorkingTree working(tree);
  for (const PairingRound& round : pairing.rounds) {
    std::vector<bool> leaf(tree.size(), false);
    for (VertexPos v : round.snapshot) leaf[v] = working.is_leaf(v);
    for (const auto& [a, b] : round.sibling_pairs) {
      if (!leaf[a] || !leaf[b] || tree.parent[a] != tree.parent[b]) return false;
    }
    for (const auto& [x, y] : round.leaf_parent_pairs) {
      if (!leaf[x] || tree.parent[x] != y) return false;
    }
    for (VertexPos v : round.removed) working.remove(v);
  }
  return true;
}

DyadicResult dyadic_clumping(const FactorGraph& tree, const IndexAssignment& idx, const DyadicOptions& options) {
  const std::size_t n = tree.vertex_count;
  if (n == 0) throw Error(ErrorCode::kBadParameters, "empty tree");
  if (!is_power_of_two(n) && !options.allow_remainder) {
    throw Error(ErrorCode::kPowerOfTwoRequired, "dyadic clumping needs N = 2^m, got N = " + std::to_string(n));
  }
  for (int reps : options.schedule) {
    if (reps < 1) throw Error(ErrorCode::kBadParameters, "schedule entries must be >= 1");
  }

  DyadicResult out;
  out.clumping.kind = ClumpingKind::kDyadic;
  out.clumping.point_count = n;

  auto record = [&](const ContractedTree& t, int level, int exponent) {
    Partition p;
    p.level = level;
    p.exponent = exponent;
    for (const ContractedVertex& v : t.vertices) {
      Clump c;
      c.members = v.members;
      c.max_member = idx.argmax(c.members);
      c.representative = v.representative;
      c.undersized = c.members.size() != (std::size_t{1} << exponent);
      p.clumps.push_back(std::move(c));
    }
    out.clumping.partitions.push_back(std::move(p));
  };

  ContractedTree current = initial_tree(tree, idx);
  record(current, 0, 0);
  int exponent = 0;
  for (std::size_t step = 0; current.size() > 1; ++step) {
    int reps = 1;
    if (!options.schedule.empty()) reps = options.schedule[std::min(step, options.schedule.size() - 1)];
    for (int r = 0; r < reps && current.size() > 1; ++r) {
      LevelPairing pairing = pair_level(current);
      ContractedTree next = contract(current, pairing.pairs, pairing.leftover);
      out.trees.push_back(std::move(current));
      out.pairings.push_back(std::move(pairing));
      current = std::move(next);
      ++exponent;
    }
    record(current, static_cast<int>(step) + 1, exponent);
  }
  return out;
}

}  // namespace ppf
