#include "core/treefactor.hpp"

#include <algorithm>
#include <string>

#include "core/error.hpp"

namespace ppf {

FactorGraph tree_from_clumping(const Clumping& clumping, const IndexAssignment& idx) {
  const std::size_t n = clumping.point_count;
  if (idx.size() != n) throw Error(ErrorCode::kBadParameters, "index does not match clumping");
  FactorGraph tree;
  tree.vertex_count = n;
  tree.kind = GraphKind::kTree;

  DisjointSets forest(n);
  std::vector<PointId> top(n);  // max-index vertex of each forest component, by set root
  for (PointId v = 0; v < n; ++v) top[v] = v;

  std::vector<std::size_t> roots;
  for (const Partition& p : clumping.partitions) {
    for (const Clump& c : p.clumps) {
      if (c.members.empty()) continue;
      const PointId head = idx.argmax(c.members);
      roots.clear();
      for (PointId v : c.members) roots.push_back(forest.find(v));
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      for (std::size_t r : roots) {
        const PointId from = top[r];
        const std::size_t head_root = forest.find(head);
        if (forest.find(r) == head_root) continue;
        tree.edges.push_back(make_edge(from, head));
        forest.unite(r, head_root);
        top[forest.find(head)] = head;
      }
    }
  }
  if (tree.edges.size() + 1 != n && n > 0) {
    throw Error(ErrorCode::kDisconnectedClumping,
                std::to_string(n - tree.edges.size()) + " components remain after the last level");
  }
  tree.canonicalize();
  return tree;
}

namespace {

struct RootedTree {
  PointId root = 0;
  std::vector<PointId> parent;
  std::vector<std::vector<PointId>> children;
  std::vector<PointId> bfs_order;
};

RootedTree root_tree(const FactorGraph& tree, PointId root) {
  const std::size_t n = tree.vertex_count;
  const Adjacency adj(n, tree.edges);
  RootedTree rt;
  rt.root = root;
  rt.parent.assign(n, root);
  rt.children.assign(n, {});
  std::vector<bool> seen(n, false);
  rt.bfs_order.reserve(n);
  rt.bfs_order.push_back(root);
  seen[root] = true;
  for (std::size_t i = 0; i < rt.bfs_order.size(); ++i) {
    const PointId v = rt.bfs_order[i];
    for (PointId w : adj.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = true;
      rt.parent[w] = v;
      rt.children[v].push_back(w);
      rt.bfs_order.push_back(w);
    }
  }
  return rt;
}

PointId global_max(const IndexAssignment& idx) { return idx.order.back(); }

}  // namespace

PathFactor path_from_tree(const FactorGraph& tree, const IndexAssignment& idx) {
  const std::size_t n = tree.vertex_count;
  if (!is_spanning_tree(n, tree.edges)) throw Error(ErrorCode::kNotATree, "input graph is not a spanning tree");
  if (idx.size() != n) throw Error(ErrorCode::kBadParameters, "index does not match tree");
  PathFactor out;
  out.path.vertex_count = n;
  out.path.kind = GraphKind::kPath;
  if (n == 0) return out;

  RootedTree rt = root_tree(tree, global_max(idx));
  std::vector<PointId> subtree_max(n);
  for (PointId v = 0; v < n; ++v) subtree_max[v] = v;
  for (std::size_t i = n; i-- > 0;) {
    const PointId v = rt.bfs_order[i];
    if (v != rt.root && idx.less(subtree_max[rt.parent[v]], subtree_max[v]))
      subtree_max[rt.parent[v]] = subtree_max[v];
  }
  for (auto& kids : rt.children) {
    std::sort(kids.begin(), kids.end(),
              [&](PointId a, PointId b) { return idx.less(subtree_max[a], subtree_max[b]); });
  }

  // Iterative post-order.
  std::vector<std::pair<PointId, std::size_t>> stack{{rt.root, 0}};
  out.order.reserve(n);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < rt.children[v].size()) {
      const PointId child = rt.children[v][next++];
      stack.emplace_back(child, 0);
    } else {
      out.order.push_back(v);
      stack.pop_back();
    }
  }
  for (std::size_t i = 0; i + 1 < out.order.size(); ++i)
    out.path.edges.push_back(make_edge(out.order[i], out.order[i + 1]));
  out.path.canonicalize();
  return out;
}

std::vector<PointId> trunk(const Clumping& clumping, PointId v) {
  std::vector<PointId> out;
  for (const Partition& p : clumping.partitions) {
    for (const Clump& c : p.clumps) {
      if (std::binary_search(c.members.begin(), c.members.end(), v)) {
        out.push_back(c.max_member);
        break;
      }
    }
  }
  return out;
}

std::vector<PointId> upward_path(const TreeStats& stats, PointId v) {
  std::vector<PointId> path{v};
  while (path.back() != stats.root && path.size() <= stats.parent.size()) path.push_back(stats.parent[path.back()]);
  return path;
}

TreeStats tree_stats(const FactorGraph& tree, const Clumping& clumping, const IndexAssignment& idx) {
  const std::size_t n = tree.vertex_count;
  if (!is_spanning_tree(n, tree.edges)) throw Error(ErrorCode::kNotATree, "input graph is not a spanning tree");
  TreeStats stats;
  if (n == 0) return stats;
  const RootedTree rt = root_tree(tree, global_max(idx));
  stats.root = rt.root;
  stats.parent = rt.parent;
  stats.depth.assign(n, 0);
  for (PointId v : rt.bfs_order) {
    if (v != rt.root) stats.depth[v] = stats.depth[rt.parent[v]] + 1;
    stats.height = std::max(stats.height, stats.depth[v]);
  }
  const Adjacency adj(n, tree.edges);
  for (PointId v = 0; v < n; ++v) {
    ++stats.degree_histogram[adj.degree(v)];
    stats.max_degree = std::max(stats.max_degree, adj.degree(v));
  }

  // Per-level clump maxima for every vertex at once.
  std::vector<std::vector<PointId>> trunks(n);
  for (const Partition& p : clumping.partitions) {
    for (const Clump& c : p.clumps) {
      for (PointId v : c.members) {
        if (v < n) trunks[v].push_back(c.max_member);
      }
    }
  }
  for (PointId v = 0; v < n; ++v) {
    std::vector<PointId> expected{v};
    for (PointId m : trunks[v]) {
      if (m != expected.back()) expected.push_back(m);
    }
    if (expected != upward_path(stats, v)) stats.trunk_violations.push_back(v);
  }
  return stats;
}

}  // namespace ppf
