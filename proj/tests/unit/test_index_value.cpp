#include <doctest.h>

#include <set>
#include <string>

#include "core/error.hpp"
#include "core/index_value.hpp"
#include "core/rng.hpp"

using namespace ppf;

namespace {

// Digit-string oracle: a's 10^n digit to 10^(2n), b's to 10^(2n+1), for
// integers written without a fractional part.
std::string interleave_integers(std::string a, std::string b) {
  const std::size_t len = std::max(a.size(), b.size());
  a.insert(0, len - a.size(), '0');
  b.insert(0, len - b.size(), '0');
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    out += b[i];
    out += a[i];
  }
  const auto first = out.find_first_not_of('0');
  return first == std::string::npos ? "0" : out.substr(first);
}

}  // namespace

TEST_CASE("pair index of 12 and 3") {
  const auto a = IndexValue::parse("12");
  const auto b = IndexValue::parse("3");
  CHECK(a.interleave(b).to_string() == "132");
  CHECK(b.interleave(a).to_string() == "1023");
  CHECK(pair_index(a, b).to_string() == "1023");
  CHECK(pair_index(b, a) == pair_index(a, b));
  CHECK_THROWS_WITH_AS(pair_index(a, a), doctest::Contains("EqualIndices"), Error);
}

TEST_CASE("fractional digits interleave around the decimal point") {
  // 0.5: digit 5 at 10^-1 -> 10^-2. 0.25: 2 at 10^-1 -> 10^-1, 5 at 10^-2 -> 10^-3.
  CHECK(IndexValue::parse("0.5").interleave(IndexValue::parse("0.25")) == IndexValue::parse("0.255"));
  CHECK(IndexValue::parse("1.5").interleave(IndexValue::parse("2")).to_string() == "21.05");
}

TEST_CASE("interleaving agrees with a digit-string oracle") {
  CounterRng rng(4, 4);
  for (int t = 0; t < 500; ++t) {
    const auto x = rng.below(1000000000), y = rng.below(1000000000);
    const auto a = IndexValue::from_integer(x), b = IndexValue::from_integer(y);
    std::string got = a.interleave(b).to_string();
    if (const auto dot = got.find('.'); dot != std::string::npos) {
      CHECK(got.find_first_not_of('0', dot + 1) == std::string::npos);
      got = got.substr(0, dot);
    }
    CHECK(got == interleave_integers(std::to_string(x), std::to_string(y)));
  }
}

TEST_CASE("pair index is injective over a pool of indices") {
  std::vector<IndexValue> pool;
  CounterRng rng(9, 1);
  std::set<std::uint64_t> raw;
  while (raw.size() < 100) raw.insert(rng.below(1000000));
  for (auto v : raw) pool.push_back(IndexValue::from_integer(v));
  std::set<std::string> seen;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      seen.insert(pair_index(pool[i], pool[j]).to_string());
      ++pairs;
    }
  }
  CHECK(seen.size() == pairs);
}

TEST_CASE("index values compare numerically") {
  CHECK(IndexValue::parse("2") < IndexValue::parse("10"));
  CHECK(IndexValue::parse("0.30") == IndexValue::parse("0.3"));
  CHECK(IndexValue::from_integer(7).to_long_double() == 7.0L);
  CHECK(IndexValue::from_integer(7).fraction_digits() == kIndexFractionDigits);
  CHECK(IndexValue::parse("12.5").digit(1) == 1);
  CHECK(IndexValue::parse("12.5").digit(-1) == 5);
  CHECK_THROWS_AS(IndexValue::parse("-1"), Error);
  CHECK_THROWS_AS(IndexValue::parse("1.2.3"), Error);
}
