#include <doctest.h>

#include <algorithm>
#include <map>

#include "core/dyadic.hpp"
#include "core/error.hpp"
#include "core/gridfactor.hpp"
#include "core/pipeline.hpp"
#include "helpers.hpp"

using namespace ppf;

namespace {

// a, b, c, d = 0, 1, 2, 3 with ascending index; edges {a,b}, {c,d}, {b,d}.
struct FourPoint {
  IndexAssignment idx = IndexAssignment::from_ranks({0, 1, 2, 3});
  DyadicResult dyadic = dyadic_clumping(FactorGraph{4, GraphKind::kTree, {{0, 1}, {1, 3}, {2, 3}}}, idx);
};

std::vector<std::int64_t> coords_of(const GridEmbedding& g, PointId v) {
  const auto c = g.coord(v);
  return {c.begin(), c.end()};
}

GridEmbedding sampled_grid(std::size_t n_points, int n, std::uint64_t seed) {
  BuildOptions opt;
  opt.grid_dim = n;
  return build_grid_artifacts(test::binomial(n_points, seed), opt).grid;
}

}  // namespace

TEST_CASE("block shapes and gluing parameters") {
  CHECK(block_extents(0, 2) == std::vector<std::int64_t>{1, 1});
  CHECK(block_extents(1, 2) == std::vector<std::int64_t>{1, 2});
  CHECK(block_extents(2, 2) == std::vector<std::int64_t>{2, 2});
  CHECK(block_extents(3, 2) == std::vector<std::int64_t>{2, 4});
  CHECK(block_extents(4, 1) == std::vector<std::int64_t>{16});
  CHECK(block_extents(9, 3) == std::vector<std::int64_t>{8, 8, 8});
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < 12; ++k) {
      // Doubling the chosen axis of K_k gives the extents of K_(k+1).
      auto e = block_extents(k, n);
      CHECK(e[static_cast<std::size_t>(doubling_axis(k, n) - 1)] == doubling_offset(k, n));
      e[static_cast<std::size_t>(doubling_axis(k, n) - 1)] *= 2;
      CHECK(e == block_extents(k + 1, n));
    }
  }
  const std::int64_t sq[] = {16, 16};
  CHECK(box_boundary_count(sq) == 60);
  const std::int64_t cube[] = {8, 8, 8};
  CHECK(box_boundary_count(cube) == 296);
  const std::int64_t thin[] = {2, 5};
  CHECK(box_boundary_count(thin) == 10);
}

TEST_CASE("grid of the four-point example") {
  const FourPoint f;
  const GridEmbedding line = grid_factor(f.dyadic.clumping, f.idx, 1);
  CHECK(coords_of(line, 2) == std::vector<std::int64_t>{1});
  CHECK(coords_of(line, 3) == std::vector<std::int64_t>{2});
  CHECK(coords_of(line, 0) == std::vector<std::int64_t>{3});
  CHECK(coords_of(line, 1) == std::vector<std::int64_t>{4});
  CHECK(line.extents == std::vector<std::int64_t>{4});
  CHECK(line.edges.kind == GraphKind::kGrid);
  CHECK(line.edges.edges.size() == 3);

  const GridEmbedding sq = grid_factor(f.dyadic.clumping, f.idx, 2);
  CHECK(sq.extents == std::vector<std::int64_t>{2, 2});
  CHECK(coords_of(sq, 2) == std::vector<std::int64_t>{1, 1});
  CHECK(coords_of(sq, 3) == std::vector<std::int64_t>{1, 2});
  CHECK(coords_of(sq, 0) == std::vector<std::int64_t>{2, 1});
  CHECK(coords_of(sq, 1) == std::vector<std::int64_t>{2, 2});
  CHECK(sq.edges.edges.size() == 4);
  CHECK(sq.glues.size() == 3);
}

TEST_CASE("grid verification counts the boundary") {
  const FourPoint f;
  const GridReport line = verify_grid(grid_factor(f.dyadic.clumping, f.idx, 1));
  CHECK(line.ok);
  CHECK(line.deficient == 2);
  const GridReport sq = verify_grid(grid_factor(f.dyadic.clumping, f.idx, 2));
  CHECK(sq.ok);
  CHECK(sq.deficient == 4);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GridReport r2 = verify_grid(sampled_grid(256, 2, seed));
    CHECK(r2.ok);
    CHECK(r2.deficient == 60);
    CHECK(r2.expected_deficient == 60);
  }
  const GridEmbedding g3 = sampled_grid(512, 3, 7);
  CHECK(g3.extents == std::vector<std::int64_t>{8, 8, 8});
  const GridReport r3 = verify_grid(g3);
  CHECK(r3.ok);
  CHECK(r3.deficient == 296);

  const std::int64_t ext[] = {3, 3};
  GridEmbedding broken = box_grid(ext, false);
  broken.edges.edges.pop_back();
  const GridReport b = verify_grid(broken);
  CHECK_FALSE(b.ok);
  CHECK_FALSE(b.adjacency);
  CHECK_FALSE(b.failures.empty());
}

TEST_CASE("clumps occupy boxes of the block shape") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    BuildOptions opt;
    const GridArtifacts a = build_grid_artifacts(test::binomial(128, seed), opt);
    const GridEmbedding& g = a.grid;
    CHECK(g.m == 7);
    for (const Partition& p : a.dyadic.clumping.partitions) {
      const auto shape = block_extents(p.exponent, g.n);
      for (const Clump& c : p.clumps) {
        std::vector<std::int64_t> lo(2, INT64_MAX), hi(2, INT64_MIN);
        for (PointId v : c.members) {
          for (int i = 0; i < 2; ++i) {
            lo[i] = std::min(lo[i], g.coord(v)[i]);
            hi[i] = std::max(hi[i], g.coord(v)[i]);
          }
        }
        for (int i = 0; i < 2; ++i) CHECK(hi[i] - lo[i] + 1 == shape[i]);
        // The clump's lower corner sits on the block lattice.
        for (int i = 0; i < 2; ++i) CHECK((lo[i] - 1) % shape[i] == 0);
      }
    }
  }
}

TEST_CASE("grid factor preconditions") {
  const FourPoint f;
  CHECK_THROWS_WITH_AS(grid_factor(f.dyadic.clumping, f.idx, 0), doctest::Contains("DimensionMismatch"), Error);
  CHECK_THROWS_AS(grid_factor(f.dyadic.clumping, f.idx, 63), Error);

  const TreeArtifacts t = build_tree_artifacts(test::binomial(64, 2));
  CHECK_THROWS_WITH_AS(grid_factor(t.clumping, t.index, 2), doctest::Contains("NotDyadic"), Error);

  Clumping broken = f.dyadic.clumping;
  broken.partitions.erase(broken.partitions.begin() + 1);
  CHECK_THROWS_WITH_AS(grid_factor(broken, f.idx, 2), doctest::Contains("NotDyadic"), Error);

  BuildOptions opt;
  opt.schedule = {2};
  const DyadicResult sched = build_dyadic(t, opt);
  CHECK_THROWS_WITH_AS(grid_factor(sched.clumping, t.index, 2), doctest::Contains("NotDyadic"), Error);
}

TEST_CASE("deficiency transport on small grids") {
  const std::int64_t two[] = {2, 2};
  const DeficiencyTransport sq = deficiency_transport(box_grid(two, false), 0);
  CHECK(sq.deficient == 4);
  CHECK(sq.sent_total == 8);
  CHECK(sq.received_total == 8);
  CHECK(sq.receive_bound == 4);

  const std::int64_t four[] = {4};
  const DeficiencyTransport line = deficiency_transport(box_grid(four, false), 0);
  CHECK(line.sent_total == 6);
  CHECK(line.sent == std::vector<std::uint64_t>{3, 0, 0, 3});
  CHECK(line.received == std::vector<std::uint64_t>{1, 2, 2, 1});
  CHECK(line.max_received == 2);
  CHECK(line.bound_ok);

  const std::int64_t ring[] = {3, 3};
  const GridEmbedding torus = box_grid(ring, true);
  CHECK(torus.edges.edges.size() == 18);
  const DeficiencyTransport none = deficiency_transport(torus, 0);
  CHECK(none.sent_total == 0);
  CHECK(none.deficient == 0);

  const GridEmbedding g = sampled_grid(256, 2, 4);
  const DeficiencyTransport t = deficiency_transport(g, 500, 9);
  CHECK(t.sent_total == t.received_total);
  // Interior vertices send nothing; every vertex receives at most 2n.
  for (PointId v = 0; v < g.size(); ++v) {
    const auto c = g.coord(v);
    if (c[0] > 1 && c[0] < 16 && c[1] > 1 && c[1] < 16) CHECK(t.sent[v] == 0);
    CHECK(t.received[v] <= 4);
  }
  CHECK(t.bound_ok);
  CHECK(t.trials == 500);
  CHECK(std::abs(t.mean_out - t.mean_in) <= 3.0 * (t.se_out + t.se_in));
}

TEST_CASE("deficient fraction decays with the grid size") {
  double previous = 1.0;
  for (int m = 6; m <= 10; ++m) {
    const GridEmbedding g = sampled_grid(std::size_t{1} << m, 2, 11);
    const GridReport r = verify_grid(g);
    CHECK(r.ok);
    const double frac = static_cast<double>(r.deficient) / static_cast<double>(g.size());
    CHECK(frac < previous);
    previous = frac;
  }
}
