#include <doctest.h>

#include <json.hpp>

#include "core/error.hpp"
#include "core/suites.hpp"

using namespace ppf;

namespace {

SuiteOptions small() {
  SuiteOptions o;
  o.seeds = {3};
  o.trials = 40;
  o.translations = 3;
  o.points = 64;
  o.intensity = 60.0;
  return o;
}

}  // namespace

TEST_CASE("every suite passes on a small run") {
  const auto reports = run_suite("all", small());
  CHECK(reports.size() == suite_names().size() - 1);
  for (const SuiteReport& r : reports) {
    CHECK_MESSAGE(r.pass(), r.suite);
    CHECK(r.failures() == 0);
    CHECK_FALSE(r.checks.empty());
  }
  const auto j = nlohmann::json::parse(reports_to_json(reports));
  CHECK(j.is_array());
}

TEST_CASE("unknown suite") {
  CHECK_THROWS_WITH_AS(run_suite("nope", small()), doctest::Contains("BadParameters"), Error);
  CHECK(run_suite("tree", small()).size() == 1);
}
