#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/spatial.hpp"
#include "helpers.hpp"

using namespace ppf;

TEST_CASE("torus and box distances") {
  const Domain line{1, 10.0, Topology::kTorus};
  const double p[] = {1.0}, q[] = {7.0};
  CHECK(distance(p, q, line) == doctest::Approx(4.0));
  CHECK(distance(p, p, line) == 0.0);

  const Domain plane{2, 10.0, Topology::kTorus};
  const double o[] = {0.0, 0.0}, c[] = {9.0, 9.0};
  CHECK(distance(o, c, plane) == doctest::Approx(std::sqrt(2.0)));
  const Domain box{2, 10.0, Topology::kBox};
  CHECK(distance(o, c, box) == doctest::Approx(9.0 * std::sqrt(2.0)));
}

TEST_CASE("torus distance is a translation-invariant metric") {
  CounterRng rng(5, 0);
  for (int dim = 1; dim <= 3; ++dim) {
    const Domain dom{dim, 3.0, Topology::kTorus};
    for (int t = 0; t < 500; ++t) {
      std::vector<double> a(dim), b(dim), c(dim), s(dim);
      for (int i = 0; i < dim; ++i) {
        a[i] = rng.uniform(0, 3);
        b[i] = rng.uniform(0, 3);
        c[i] = rng.uniform(0, 3);
        s[i] = rng.uniform(0, 3);
      }
      const double ab = distance(a, b, dom), ba = distance(b, a, dom);
      CHECK(ab == ba);
      CHECK(ab == doctest::Approx(test::torus_distance(a, b, 3.0)).epsilon(1e-12));
      CHECK(ab <= distance(a, c, dom) + distance(c, b, dom) + 1e-12);
      std::vector<double> as(dim), bs(dim);
      for (int i = 0; i < dim; ++i) {
        as[i] = wrap_coordinate(a[i] + s[i], 3.0);
        bs[i] = wrap_coordinate(b[i] + s[i], 3.0);
      }
      CHECK(distance(as, bs, dom) == doctest::Approx(ab).epsilon(1e-12));
    }
  }
}

TEST_CASE("k_nearest breaks distance ties by id") {
  const PointConfig cfg = test::line_config(10.0, {0.0, 1.0, 3.0, 7.0});
  const auto nn = k_nearest(cfg, 0, 2);
  REQUIRE(nn.size() == 2);
  CHECK(nn[0] == Neighbor{1, 1.0});
  CHECK(nn[1].id == 2);  // points 2 and 3 are both at distance 3
  CHECK(nn[1].distance == doctest::Approx(3.0));
  CHECK(k_nearest(cfg, 0, 0).empty());
  CHECK(k_nearest(test::line_config(10.0, {4.0}), 0, 0).empty());
  CHECK_THROWS_AS(k_nearest(cfg, 0, 4), Error);
}

TEST_CASE("neighbor index agrees with brute force") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (Topology top : {Topology::kTorus, Topology::kBox}) {
      const Domain dom{dim, 2.0, top};
      const PointConfig cfg = sample(SamplerSpec::binomial(300, 40 + dim), dom);
      std::vector<PointId> subset;
      for (PointId i = 0; i < cfg.size(); i += 3) subset.push_back(i);
      const NeighborIndex index(cfg, subset);
      CounterRng rng(dim, 1);
      for (int q = 0; q < 100; ++q) {
        std::vector<double> x(dim);
        for (double& c : x) c = rng.uniform(0, 2.0);
        std::vector<Neighbor> brute;
        for (PointId s : subset) brute.push_back({s, distance(x, cfg.coords(s), dom)});
        std::sort(brute.begin(), brute.end(), [](const Neighbor& a, const Neighbor& b) {
          return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
        });
        const auto got = index.nearest(x, 5);
        REQUIRE(got.size() == 5);
        for (int i = 0; i < 5; ++i) CHECK(got[i] == brute[i]);

        const double r = brute[7].distance;
        std::size_t visited = 0;
        index.visit_within(x, r, [&](PointId, double d) {
          CHECK(d <= r);
          ++visited;
        });
        CHECK(visited >= 8);
      }
    }
  }
}
