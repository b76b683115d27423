#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "core/error.hpp"
#include "core/indexing.hpp"
#include "core/process.hpp"
#include "core/spatial.hpp"
#include "helpers.hpp"

using namespace ppf;

TEST_CASE("binomial sampling is exact and reproducible") {
  const Domain dom{1, 10.0, Topology::kTorus};
  const PointConfig a = sample(SamplerSpec::binomial(4, 99), dom);
  const PointConfig b = sample(SamplerSpec::binomial(4, 99), dom);
  CHECK(a.size() == 4);
  CHECK(a == b);
  CHECK_FALSE(a == sample(SamplerSpec::binomial(4, 100), dom));
  CHECK_FALSE(a == sample(SamplerSpec::binomial(4, 99), dom, 1));
  for (double x : a.raw_coords()) {
    CHECK(x >= 0.0);
    CHECK(x < 10.0);
  }
}

TEST_CASE("poisson counts have the Poisson mean and variance") {
  const Domain dom{2, 10.0, Topology::kTorus};
  const int runs = 10000;
  double sum = 0, sum2 = 0;
  for (int s = 0; s < runs; ++s) {
    const double n = static_cast<double>(sample(SamplerSpec::poisson(1.0, s), dom).size());
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / runs;
  const double var = (sum2 - runs * mean * mean) / (runs - 1);
  CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(100.0 / runs));
  // Var of the sample variance is about 2 lambda^2 / runs for large lambda.
  CHECK(std::abs(var - 100.0) < 4.0 * std::sqrt(2.0 * 100.0 * 100.0 / runs));
}

TEST_CASE("shifted lattice geometry") {
  const Domain dom{1, 10.0, Topology::kTorus};
  const PointConfig lat = sample(SamplerSpec::shifted_lattice(2.5, 5), dom);
  REQUIRE(lat.size() == 4);
  std::set<long long> dists;
  for (PointId a = 0; a < 4; ++a) {
    for (PointId b = a + 1; b < 4; ++b) dists.insert(std::llround(lat.distance(a, b) * 1e9));
  }
  CHECK(dists == std::set<long long>{2500000000LL, 5000000000LL});

  // All k-NN profiles coincide, in 1D, 2D and inside a rotated box lattice.
  const PointConfig grid = sample(SamplerSpec::shifted_lattice(0.125, 2), Domain{2, 1.0, Topology::kTorus});
  CHECK(grid.size() == 64);
  const NeighborIndex index(grid);
  const auto ref = index.nearest(grid.coords(0), 12, 0);
  for (PointId v = 1; v < grid.size(); ++v) {
    const auto nb = index.nearest(grid.coords(v), 12, v);
    for (std::size_t i = 0; i < nb.size(); ++i) CHECK(nb[i].distance == doctest::Approx(ref[i].distance).epsilon(1e-12));
  }
  CHECK_THROWS_AS(build_index(grid), Error);
  CHECK_THROWS_AS(sample(SamplerSpec::shifted_lattice(0.3, 1), Domain{2, 1.0, Topology::kTorus}), Error);
  const PointConfig boxed = sample(SamplerSpec::shifted_lattice(0.1, 3), Domain{2, 1.0, Topology::kBox});
  CHECK(boxed.size() > 50);
}

TEST_CASE("bad sampler parameters") {
  const Domain dom{2, 1.0, Topology::kTorus};
  CHECK_THROWS_WITH_AS(sample(SamplerSpec::poisson(-1.0, 1), dom), doctest::Contains("BadParameters"), Error);
  CHECK_THROWS_AS(sample(SamplerSpec::binomial(0, 1), dom), Error);
  CHECK_THROWS_AS(sample(SamplerSpec::shifted_lattice(0.0, 1), dom), Error);
  CHECK_THROWS_AS(sample(SamplerSpec::binomial(3, 1), Domain{0, 1.0, Topology::kTorus}), Error);
}

TEST_CASE("config files round-trip bit-exactly") {
  const PointConfig cfg = sample(SamplerSpec::poisson(50.0, 17), Domain{3, 2.0, Topology::kBox}, 4);
  const PointConfig back = config_from_json(config_to_json(cfg));
  CHECK(back == cfg);
  CHECK(back.provenance().kind == ProcessKind::kPoisson);
  CHECK(back.provenance().seed == 17);

  const auto path = std::filesystem::temp_directory_path() / "ppf_unit_roundtrip.json";
  save_config(cfg, path);
  CHECK(load_config(path) == cfg);
  std::filesystem::remove(path);
  CHECK_THROWS_WITH_AS(load_config("/nonexistent/ppf.json"), doctest::Contains("IoError"), Error);
}

TEST_CASE("config parse errors carry diagnostics") {
  const std::string text = config_to_json(test::binomial(5, 1));
  CHECK_THROWS_WITH_AS(config_from_json(text.substr(0, text.size() / 2)), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(config_from_json("{\n\"version\": 1,\n}"), doctest::Contains("line"), Error);
  const std::string outside =
      R"({"version":1,"domain":{"d":1,"L":1.0,"topology":"torus"},"points":[[0.5],[1.5]],)"
      R"("provenance":{"kind":"binomial","params":{},"seed":0}})";
  CHECK_THROWS_WITH_AS(config_from_json(outside), doctest::Contains("(invariant)"), Error);
  const std::string no_domain = R"({"version":1,"points":[[0.5]],"provenance":{"kind":"binomial","params":{},"seed":0}})";
  CHECK_THROWS_WITH_AS(config_from_json(no_domain), doctest::Contains("domain"), Error);
}
