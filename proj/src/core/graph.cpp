#include "core/graph.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace ppf {

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kTree: return "tree";
    case GraphKind::kPath: return "path";
    case GraphKind::kGrid: return "grid";
    case GraphKind::kGeneric: return "generic";
  }
  return "generic";
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "tree") return GraphKind::kTree;
  if (s == "path") return GraphKind::kPath;
  if (s == "grid") return GraphKind::kGrid;
  if (s == "generic") return GraphKind::kGeneric;
  throw Error(ErrorCode::kParseError, "unknown graph kind '" + s + "'");
}

void FactorGraph::canonicalize() {
  for (Edge& e : edges) e = make_edge(e.first, e.second);
  std::sort(edges.begin(), edges.end());
}

Adjacency::Adjacency(std::size_t vertex_count, std::span<const Edge> edges)
    : offsets_(vertex_count + 1, 0), adj_(2 * edges.size()) {
  for (const Edge& e : edges) {
    ++offsets_[e.first + 1];
    ++offsets_[e.second + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    adj_[fill[e.first]++] = e.second;
    adj_[fill[e.second]++] = e.first;
  }
}

bool is_spanning_tree(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count == 0) return edges.empty();
  if (edges.size() != vertex_count - 1) return false;
  DisjointSets sets(vertex_count);
  for (const Edge& e : edges) {
    if (e.first >= vertex_count || e.second >= vertex_count || e.first == e.second) return false;
    if (!sets.unite(e.first, e.second)) return false;
  }
  return true;
}

}  // namespace ppf
