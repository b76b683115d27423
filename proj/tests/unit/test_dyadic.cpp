#include <doctest.h>

#include <algorithm>

#include "core/dyadic.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "helpers.hpp"

using namespace ppf;

namespace {

FactorGraph tree_of(std::size_t n, std::vector<Edge> edges) {
  FactorGraph g{n, GraphKind::kTree, std::move(edges)};
  g.canonicalize();
  return g;
}

IndexAssignment ascending(std::size_t n) {
  std::vector<std::uint32_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(i);
  return IndexAssignment::from_ranks(r);
}

std::vector<std::vector<PointId>> clump_members(const Partition& p) {
  std::vector<std::vector<PointId>> out;
  for (const Clump& c : p.clumps) out.push_back(c.members);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("pairing a star: siblings first, then the last leaf with the root") {
  // Leaves a, b, c = 0, 1, 2; root r = 3.
  const ContractedTree t = initial_tree(tree_of(4, {{0, 3}, {1, 3}, {2, 3}}), ascending(4));
  CHECK(t.root == 3);
  WorkingTree w(t);
  const PairingRound round = pairing_round(w);
  CHECK(round.sibling_pairs == std::vector<VertexPair>{{2, 1}});
  CHECK(round.leaf_parent_pairs == std::vector<VertexPair>{{0, 3}});
  CHECK(w.alive_count() == 0);
  CHECK(round.snapshot == std::vector<VertexPos>{0, 1, 2, 3});
}

TEST_CASE("pairing paths") {
  // a - b - r
  const ContractedTree path = initial_tree(tree_of(3, {{0, 1}, {1, 2}}), ascending(3));
  const LevelPairing lp = pair_level(path);
  CHECK(lp.pairs == std::vector<VertexPair>{{0, 1}});
  REQUIRE(lp.leftover.has_value());
  CHECK(*lp.leftover == 2);
  CHECK(pairs_are_local(path, lp));

  const ContractedTree two = initial_tree(tree_of(2, {{0, 1}}), ascending(2));
  const LevelPairing l2 = pair_level(two);
  CHECK(l2.pairs == std::vector<VertexPair>{{0, 1}});
  CHECK_FALSE(l2.leftover.has_value());
}

TEST_CASE("contraction fuses pairs and keeps the tree") {
  const IndexAssignment idx = ascending(4);
  const ContractedTree star = initial_tree(tree_of(4, {{0, 3}, {1, 3}, {2, 3}}), idx);
  const ContractedTree next = contract(star, std::vector<VertexPair>{{2, 1}, {0, 3}});
  REQUIRE(next.size() == 2);
  // Ordered by descending representative; the root's class stays the root.
  const IndexValue rep_ar = pair_index(idx.values[0], idx.values[3]);
  const IndexValue rep_bc = pair_index(idx.values[1], idx.values[2]);
  CHECK(rep_ar > rep_bc);
  CHECK(next.vertices[0].members == std::vector<PointId>{0, 3});
  CHECK(next.vertices[0].representative == rep_ar);
  CHECK(next.vertices[1].members == std::vector<PointId>{1, 2});
  CHECK(next.vertices[1].representative == rep_bc);
  CHECK(next.root == 0);
  CHECK(next.edges() == std::vector<Edge>{{0, 1}});

  const ContractedTree path = initial_tree(tree_of(4, {{0, 1}, {1, 2}, {2, 3}}), idx);
  CHECK_THROWS_WITH_AS(contract(path, std::vector<VertexPair>{{0, 1}}), doctest::Contains("ImperfectPairing"), Error);
  CHECK_THROWS_AS(contract(path, std::vector<VertexPair>{{0, 1}, {1, 2}, {2, 3}}), Error);
  CHECK_THROWS_AS(contract(path, std::vector<VertexPair>{{0, 0}, {2, 3}}), Error);
  const ContractedTree path3 = initial_tree(tree_of(3, {{0, 1}, {1, 2}}), ascending(3));
  const ContractedTree kept = contract(path3, std::vector<VertexPair>{{0, 1}}, VertexPos{2});
  CHECK(kept.size() == 2);
  CHECK(kept.vertices[kept.root].members == std::vector<PointId>{2});
  CHECK_THROWS_AS(contract(path, std::vector<VertexPair>{{0, 1}}, VertexPos{2}), Error);
}

TEST_CASE("dyadic clumping of the four-point tree") {
  // a, b, c, d = 0, 1, 2, 3; edges {a,b}, {c,d}, {b,d}.
  const IndexAssignment idx = ascending(4);
  const DyadicResult r = dyadic_clumping(tree_of(4, {{0, 1}, {2, 3}, {1, 3}}), idx);
  REQUIRE(r.clumping.partitions.size() == 3);
  CHECK(r.clumping.kind == ClumpingKind::kDyadic);
  CHECK(clump_members(r.clumping.partitions[1]) == std::vector<std::vector<PointId>>{{0, 1}, {2, 3}});
  CHECK(clump_members(r.clumping.partitions[2]) == std::vector<std::vector<PointId>>{{0, 1, 2, 3}});
  for (std::size_t e = 0; e < 3; ++e) CHECK(r.clumping.partitions[e].exponent == static_cast<int>(e));
  CHECK(verify_clumping(r.clumping).ok);
  REQUIRE(r.pairings.size() == 2);
  CHECK(r.pairings[0].rounds.at(0).sibling_pairs.empty());
  CHECK(r.pairings[0].rounds.at(0).leaf_parent_pairs == std::vector<VertexPair>{{0, 1}});
}

TEST_CASE("dyadic clumping preconditions and options") {
  const DyadicResult two = dyadic_clumping(tree_of(2, {{0, 1}}), ascending(2));
  CHECK(two.clumping.partitions.size() == 2);

  const FactorGraph path3 = tree_of(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_WITH_AS(dyadic_clumping(path3, ascending(3)), doctest::Contains("PowerOfTwoRequired"), Error);
  FactorGraph cycle{4, GraphKind::kGeneric, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
  CHECK_THROWS_WITH_AS(dyadic_clumping(cycle, ascending(4)), doctest::Contains("NotATree"), Error);

  const TreeArtifacts t100 = build_tree_artifacts(test::binomial(100, 3));
  BuildOptions rem;
  rem.allow_remainder = true;
  const DyadicResult r = build_dyadic(t100, rem);
  CHECK(verify_clumping(r.clumping).ok);
  CHECK(r.clumping.partitions.back().clumps.size() == 1);
  bool any_undersized = false;
  for (const Partition& p : r.clumping.partitions) {
    for (const Clump& c : p.clumps) {
      CHECK(c.members.size() <= (std::size_t{1} << p.exponent));
      CHECK(c.undersized == (c.members.size() != (std::size_t{1} << p.exponent)));
      any_undersized = any_undersized || c.undersized;
    }
  }
  CHECK(any_undersized);

  const TreeArtifacts t64 = build_tree_artifacts(test::binomial(64, 3));
  BuildOptions sched;
  sched.schedule = {2};
  const DyadicResult s = build_dyadic(t64, sched);
  std::vector<int> exps;
  for (const Partition& p : s.clumping.partitions) exps.push_back(p.exponent);
  CHECK(exps == std::vector<int>{0, 2, 4, 6});
  sched.schedule = {1, 4};
  exps.clear();
  for (const Partition& p : build_dyadic(t64, sched).clumping.partitions) exps.push_back(p.exponent);
  CHECK(exps == std::vector<int>{0, 1, 5, 6});
}

TEST_CASE("dyadic clumping on random trees: exact sizes, nesting, local pairs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TreeArtifacts t = build_tree_artifacts(test::binomial(64, seed));
    const DyadicResult r = build_dyadic(t);
    REQUIRE(r.clumping.partitions.size() == 7);
    CHECK(verify_clumping(r.clumping).ok);
    for (const Partition& p : r.clumping.partitions) {
      CHECK(p.clumps.size() == (std::size_t{64} >> p.exponent));
      for (const Clump& c : p.clumps) CHECK(c.members.size() == (std::size_t{1} << p.exponent));
    }
    for (std::size_t i = 0; i < r.pairings.size(); ++i) {
      CHECK(pairs_are_local(r.trees[i], r.pairings[i]));
      CHECK_FALSE(r.pairings[i].leftover.has_value());
      for (const PairingRound& round : r.pairings[i].rounds) CHECK(round.pair_count() > 0);
    }
  }
}
