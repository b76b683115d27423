#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"
#include "core/indexing.hpp"
#include "core/rng.hpp"
#include "helpers.hpp"

using namespace ppf;

namespace {

// Full sorted distance profile of every point, quantized like the index, by
// exhaustive pairwise distances.
std::vector<std::vector<long long>> full_profiles(const PointConfig& cfg) {
  const double side = cfg.domain().side;
  std::vector<std::vector<long long>> out(cfg.size());
  for (PointId v = 0; v < cfg.size(); ++v) {
    for (PointId w = 0; w < cfg.size(); ++w) {
      if (w != v) out[v].push_back(std::llround(test::torus_distance(cfg.coords(v), cfg.coords(w), side) / side * 1e12));
    }
    std::sort(out[v].begin(), out[v].end());
  }
  return out;
}

bool independent(const std::vector<Edge>& edges, const std::vector<PointId>& set) {
  const std::set<PointId> s(set.begin(), set.end());
  return std::none_of(edges.begin(), edges.end(), [&](const Edge& e) { return s.contains(e.first) && s.contains(e.second); });
}

}  // namespace

TEST_CASE("index of a small 1D configuration") {
  const PointConfig cfg = test::line_config(10.0, {0.0, 1.0, 3.0, 7.0});
  const IndexAssignment idx = build_index(cfg, 3);
  CHECK(idx.profile_length == 3);
  CHECK(idx.profiles[0] == std::vector<double>{1, 3, 3});
  CHECK(idx.profiles[1] == std::vector<double>{1, 2, 4});
  CHECK(idx.profiles[2] == std::vector<double>{2, 3, 4});
  CHECK(idx.profiles[3] == std::vector<double>{3, 4, 4});
  // (1,2,4) < (1,3,3) < (2,3,4) < (3,4,4)
  CHECK(idx.order == std::vector<PointId>{1, 0, 2, 3});
  CHECK(idx.values[1] < idx.values[0]);
}

TEST_CASE("single point and symmetric inputs") {
  const IndexAssignment one = build_index(test::line_config(10.0, {4.2}), 0);
  CHECK(one.size() == 1);
  CHECK_THROWS_WITH_AS(build_index(test::line_config(10.0, {0.0, 2.5, 5.0, 7.5})), doctest::Contains("NonInjectiveIndex"),
                       Error);
}

TEST_CASE("index order matches the exhaustive lexicographic profile order") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const PointConfig cfg = test::binomial(120, seed, dim);
      const IndexAssignment idx = build_index(cfg);
      const auto profiles = full_profiles(cfg);
      std::vector<PointId> oracle(cfg.size());
      for (PointId v = 0; v < cfg.size(); ++v) oracle[v] = v;
      std::sort(oracle.begin(), oracle.end(), [&](PointId a, PointId b) { return profiles[a] < profiles[b]; });
      CHECK(idx.order == oracle);
      std::set<std::string> distinct;
      for (const auto& v : idx.values) distinct.insert(v.to_string());
      CHECK(distinct.size() == cfg.size());
    }
  }
}

TEST_CASE("index is invariant under torus translation") {
  const PointConfig cfg = test::binomial(200, 3);
  const double shift[] = {0.37, 0.91};
  CHECK(build_index(cfg.translated(shift)).order == build_index(cfg).order);
}

TEST_CASE("rational enumeration starts with the integers") {
  RationalEnumeration e(3);
  std::vector<long double> head;
  for (int i = 0; i < 5; ++i) head.push_back(*e.next());
  CHECK(head == std::vector<long double>{0, 1, -1, 2, -2});
  std::set<long double> seen(head.begin(), head.end());
  std::size_t count = 5;
  while (auto q = e.next()) {
    CHECK(*q >= -2);
    CHECK(*q <= 2);
    seen.insert(*q);
    ++count;
  }
  CHECK(seen.size() == count);  // no repeats
  CHECK(seen.contains(0.5L));
  CHECK(seen.contains(-0.125L));
}

TEST_CASE("independent set examples") {
  const auto idx = IndexAssignment::from_ranks({0, 1, 2});
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  CHECK(independent_set(Adjacency(3, path), idx) == std::vector<PointId>{0});
  CHECK(independent_set(Adjacency(3, {}), idx) == std::vector<PointId>{0, 1, 2});
  const std::vector<Edge> complete{{0, 1}, {0, 2}, {1, 2}};
  CHECK(independent_set(Adjacency(3, complete), idx) == std::vector<PointId>{0});
}

TEST_CASE("independent sets are independent on random graphs") {
  CounterRng rng(3, 3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 5 + rng.below(40);
    std::vector<std::uint32_t> ranks(n);
    for (std::size_t i = 0; i < n; ++i) ranks[i] = static_cast<std::uint32_t>(i);
    std::shuffle(ranks.begin(), ranks.end(), rng);
    std::vector<Edge> edges;
    for (PointId a = 0; a < n; ++a) {
      for (PointId b = a + 1; b < n; ++b) {
        if (rng.uniform01() < 0.2) edges.emplace_back(a, b);
      }
    }
    const auto set = independent_set(Adjacency(n, edges), IndexAssignment::from_ranks(ranks));
    CHECK_FALSE(set.empty());
    CHECK(independent(edges, set));
  }
}

TEST_CASE("nets of a small 1D configuration") {
  const PointConfig cfg = test::line_config(8.0, {0, 1, 2, 4, 6});
  const auto edges = proximity_edges(cfg, 2.0);
  CHECK(edges == std::vector<Edge>{{0, 1}, {1, 2}});
  // The configuration is mirror-symmetric about 1, so profiles cannot index
  // it; any injective index will do for the separation property.
  CHECK_THROWS_AS(build_index(cfg), Error);
  const IndexAssignment idx = IndexAssignment::from_ranks({3, 1, 4, 0, 2});
  const NetLevel v1 = net_level(cfg, idx, 1, 1.0);
  CHECK(independent(edges, v1.sites));
  for (PointId a : v1.sites) {
    for (PointId b : v1.sites) {
      if (a != b) CHECK(cfg.distance(a, b) >= 2.0);
    }
  }

  const NetHierarchy one = build_nets(test::line_config(8.0, {3.0}), build_index(test::line_config(8.0, {3.0})));
  REQUIRE(one.levels.size() == 1);
  CHECK(one.levels[0].sites == std::vector<PointId>{0});
}

TEST_CASE("net separation holds at every level") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const PointConfig cfg = test::binomial(256, seed, dim);
      const IndexAssignment idx = build_index(cfg);
      const NetHierarchy nets = build_nets(cfg, idx);
      CHECK(nets.unit == doctest::Approx(default_net_unit(256, cfg.domain())));
      REQUIRE_FALSE(nets.levels.empty());
      for (std::size_t l = 0; l < nets.levels.size(); ++l) {
        const NetLevel& lvl = nets.levels[l];
        CHECK(lvl.level == static_cast<int>(l) + 1);
        CHECK_FALSE(lvl.sites.empty());
        double closest = INFINITY;
        for (std::size_t i = 0; i < lvl.sites.size(); ++i) {
          for (std::size_t j = i + 1; j < lvl.sites.size(); ++j) closest = std::min(closest, cfg.distance(lvl.sites[i], lvl.sites[j]));
        }
        CHECK(closest >= lvl.separation);
      }
      // The last level's proximity graph is complete.
      const auto top = proximity_edges(cfg, nets.levels.back().separation);
      CHECK(top.size() == cfg.size() * (cfg.size() - 1) / 2);
    }
  }
}
