#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/domain.hpp"
#include "core/graph.hpp"
#include "core/index_value.hpp"

namespace ppf {

// Injective index on the points of a configuration. values[id] is the
// decimal index; rank[id] is its position in ascending index order.
struct IndexAssignment {
  std::vector<IndexValue> values;
  std::vector<std::uint32_t> rank;
  std::vector<PointId> order;
  // Profile length that made all profiles distinct.
  std::size_t profile_length = 0;
  // Sorted neighbor distances per point, truncated to profile_length.
  std::vector<std::vector<double>> profiles;

  std::size_t size() const noexcept { return values.size(); }
  bool less(PointId a, PointId b) const noexcept { return rank[a] < rank[b]; }
  // Point with the largest index among `ids` (nonempty).
  PointId argmax(std::span<const PointId> ids) const noexcept;

  // Index whose order is given by `ranks` (a permutation of 0..n-1); for
  // hand-built fixtures and tests.
  static IndexAssignment from_ranks(std::vector<std::uint32_t> ranks);
};

// Lexicographic rank of each point's sorted k-NN distance profile, with k
// grown from k0 until all profiles differ at fixed precision. Throws
// NonInjectiveIndex when profiles still collide at k = N - 1.
IndexAssignment build_index(const PointConfig& config, std::size_t k0 = 2);

// Fixed enumeration of rationals: 0, 1, -1, 2, -2, then the dyadic midpoints
// of everything enumerated so far, one refinement depth at a time.
class RationalEnumeration {
 public:
  explicit RationalEnumeration(int max_depth = 12) : max_depth_(max_depth) {}
  std::optional<long double> next();

 private:
  int max_depth_;
  int depth_ = 0;
  std::int64_t step_ = 0;
};

// N(q*) for the first enumerated q (mapped onto the observed index range)
// where N(q) = {v : |i(v) - q| < |i(w) - q| for all neighbors w} is nonempty.
// Returns ids in ascending order.
std::vector<PointId> independent_set(const Adjacency& graph, const IndexAssignment& idx);

struct NetLevel {
  int level = 0;
  double separation = 0.0;  // 2^level * unit
  std::vector<PointId> sites;
};

struct NetHierarchy {
  double unit = 0.0;
  std::vector<NetLevel> levels;
  int max_level() const noexcept { return levels.empty() ? 0 : levels.back().level; }
};

// L / 2^(ceil(log2 N^(1/d)) + 2).
double default_net_unit(std::size_t n, const Domain& dom);

// Pairs of points closer than `threshold`.
std::vector<Edge> proximity_edges(const PointConfig& config, double threshold);

// V_k for a single level k.
NetLevel net_level(const PointConfig& config, const IndexAssignment& idx, int level, double unit);

// V_k for k = 1, 2, ... up to the first level whose proximity graph is complete.
NetHierarchy build_nets(const PointConfig& config, const IndexAssignment& idx,
                        std::optional<double> unit = std::nullopt);

}  // namespace ppf
