#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/clumping.hpp"
#include "core/graph.hpp"
#include "core/indexing.hpp"

namespace ppf {

// Two K_{k-1} blocks glued into K_k. The kept block holds the larger
// representative; the moved block is shifted by `offset` along `axis`.
struct BlockGlue {
  int level = 0;
  std::size_t kept_clump = 0;   // positions in partition level-1
  std::size_t moved_clump = 0;
  int axis = 0;                 // 1-based
  std::int64_t offset = 0;
};

struct GridEmbedding {
  int n = 0;
  int m = 0;
  std::vector<std::int64_t> extents;  // per axis
  std::vector<std::int64_t> coords;   // point-major, n entries per point, 1-based
  FactorGraph edges;
  std::vector<BlockGlue> glues;
  // Edges may wrap around each axis; only for hand-built comparison grids.
  bool periodic = false;

  std::size_t size() const noexcept { return edges.vertex_count; }
  std::span<const std::int64_t> coord(PointId v) const noexcept {
    return {coords.data() + static_cast<std::size_t>(v) * n, static_cast<std::size_t>(n)};
  }
};

// Extents of K_k in dimension n: k = jn + i gives 2^j on the first n - i
// axes and 2^(j+1) on the last i.
std::vector<std::int64_t> block_extents(int k, int n);
// Axis doubled when gluing two K_k into K_(k+1), and the shift applied.
int doubling_axis(int k, int n);
std::int64_t doubling_offset(int k, int n);

// Vertices of the box with fewer than 2n neighbors inside it.
std::int64_t box_boundary_count(std::span<const std::int64_t> extents);

// Z^n factor from a dyadic clumping whose levels are 0, 1, ..., m with
// N = 2^m. Throws NotDyadic or DimensionMismatch.
GridEmbedding grid_factor(const Clumping& dc, const IndexAssignment& idx, int n);

// Full box graph with coordinates in row order; wrap-around edges when
// periodic (extents must then be >= 3 for a simple graph).
GridEmbedding box_grid(std::span<const std::int64_t> extents, bool periodic);

// Grid edges implied by coordinates.
std::vector<Edge> grid_adjacency(const GridEmbedding& g);

struct GridReport {
  bool ok = true;
  bool bijection = true;
  bool adjacency = true;
  bool interior_degree = true;
  std::size_t deficient = 0;
  std::int64_t expected_deficient = 0;
  std::vector<std::string> failures;
};

GridReport verify_grid(const GridEmbedding& g);

struct DeficiencyTransport {
  // Mass sent by each vertex and received by each vertex.
  std::vector<std::uint64_t> sent;
  std::vector<std::uint64_t> received;
  std::uint64_t sent_total = 0;
  std::uint64_t received_total = 0;
  std::size_t deficient = 0;
  double deficient_fraction = 0.0;
  std::uint64_t max_received = 0;
  std::uint64_t receive_bound = 0;  // 2n
  bool bound_ok = true;
  // Uniformly sampled vertex origins.
  std::size_t trials = 0;
  double mean_out = 0.0;
  double mean_in = 0.0;
  double se_out = 0.0;
  double se_in = 0.0;
};

// Every (vertex, axis, direction) lacking a grid edge sends mass 1 to each
// vertex of the maximal straight grid path leaving it the other way.
DeficiencyTransport deficiency_transport(const GridEmbedding& g, std::size_t trials, std::uint64_t seed = 0);

}  // namespace ppf
