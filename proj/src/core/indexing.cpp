#include "core/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/spatial.hpp"

namespace ppf {

namespace {

// Profile components are compared at kIndexFractionDigits digits of d / L.
std::int64_t quantize(double distance, double side) {
  return std::llround(distance / side * 1e12);
}

}  // namespace

PointId IndexAssignment::argmax(std::span<const PointId> ids) const noexcept {
  PointId best = ids.front();
  for (PointId v : ids) {
    if (rank[v] > rank[best]) best = v;
  }
  return best;
}

IndexAssignment IndexAssignment::from_ranks(std::vector<std::uint32_t> ranks) {
  IndexAssignment idx;
  idx.rank = std::move(ranks);
  const std::size_t n = idx.rank.size();
  idx.order.assign(n, 0);
  idx.values.reserve(n);
  std::vector<bool> seen(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t r = idx.rank[v];
    if (r >= n || seen[r]) throw Error(ErrorCode::kNonInjectiveIndex, "ranks are not a permutation");
    seen[r] = true;
    idx.order[r] = static_cast<PointId>(v);
    idx.values.push_back(IndexValue::from_integer(r));
  }
  return idx;
}

IndexAssignment build_index(const PointConfig& config, std::size_t k0) {
  const std::size_t n = config.size();
  if (n == 0) throw Error(ErrorCode::kBadParameters, "cannot index an empty configuration");
  if (n == 1) {
    IndexAssignment idx = IndexAssignment::from_ranks({0});
    idx.profiles.assign(1, {});
    return idx;
  }

  const std::size_t kmax = n - 1;
  k0 = std::min(k0, kmax);
  std::size_t kcap = std::min(std::max<std::size_t>(k0, 8), kmax);
  const double side = config.domain().side;
  NeighborIndex index(config);

  std::vector<std::vector<double>> profiles(n);
  std::vector<std::vector<std::int64_t>> keys(n);
  std::vector<PointId> order(n);
  while (true) {
    for (PointId v = 0; v < n; ++v) {
      const auto nb = index.nearest(config.coords(v), kcap, v);
      profiles[v].resize(nb.size());
      keys[v].resize(nb.size());
      for (std::size_t i = 0; i < nb.size(); ++i) {
        profiles[v][i] = nb[i].distance;
        keys[v][i] = quantize(nb[i].distance, side);
      }
    }
    for (PointId v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](PointId a, PointId b) {
      return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
    });

    // The shortest prefix separating all profiles is one past the longest
    // common prefix of neighbors in sorted order.
    std::size_t longest_common = 0;
    std::optional<std::pair<PointId, PointId>> collision;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto& a = keys[order[i]];
      const auto& b = keys[order[i + 1]];
      const auto diff = std::mismatch(a.begin(), a.end(), b.begin()).first - a.begin();
      const auto common = static_cast<std::size_t>(diff);
      if (common == kcap) {
        collision = std::make_pair(order[i], order[i + 1]);
        break;
      }
      longest_common = std::max(longest_common, common);
    }
    if (collision) {
      if (kcap == kmax) {
        throw Error(ErrorCode::kNonInjectiveIndex,
                    "points " + std::to_string(collision->first) + " and " +
                        std::to_string(collision->second) + " have identical distance profiles at k = " +
                        std::to_string(kmax) + " (symmetric configuration)");
      }
      kcap = std::min(2 * kcap, kmax);
      continue;
    }

    IndexAssignment idx;
    idx.profile_length = std::max(k0, longest_common + 1);
    idx.rank.assign(n, 0);
    idx.order = order;
    idx.values.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      idx.rank[order[r]] = static_cast<std::uint32_t>(r);
      idx.values[order[r]] = IndexValue::from_integer(r);
    }
    for (auto& p : profiles) p.resize(idx.profile_length);
    idx.profiles = std::move(profiles);
    return idx;
  }
}

std::optional<long double> RationalEnumeration::next() {
  static constexpr long double kIntegers[] = {0.0L, 1.0L, -1.0L, 2.0L, -2.0L};
  if (depth_ == 0) {
    if (step_ < 5) return kIntegers[step_++];
    depth_ = 1;
    step_ = 0;
  }
  while (depth_ <= max_depth_) {
    const std::int64_t top = (std::int64_t{1} << (depth_ + 1)) - 1;
    const std::int64_t numerator = -top + 2 * step_;
    if (numerator <= top) {
      ++step_;
      return std::ldexp(static_cast<long double>(numerator), -depth_);
    }
    ++depth_;
    step_ = 0;
  }
  return std::nullopt;
}

std::vector<PointId> independent_set(const Adjacency& graph, const IndexAssignment& idx) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) return {};
  std::vector<long double> value(n);
  for (std::size_t v = 0; v < n; ++v) value[v] = idx.values[v].to_long_double();
  const auto [lo_it, hi_it] = std::minmax_element(value.begin(), value.end());
  const long double lo = *lo_it;
  const long double span = *hi_it > lo ? *hi_it - lo : 1.0L;

  std::vector<long double> gap(n);
  std::vector<PointId> chosen;
  RationalEnumeration rationals;
  while (auto q = rationals.next()) {
    const long double target = lo + *q * span;
    for (std::size_t v = 0; v < n; ++v) gap[v] = std::fabs(value[v] - target);
    chosen.clear();
    for (PointId v = 0; v < n; ++v) {
      bool wins = true;
      for (PointId w : graph.neighbors(v)) {
        if (!(gap[v] < gap[w])) {
          wins = false;
          break;
        }
      }
      if (wins) chosen.push_back(v);
    }
    if (!chosen.empty()) return chosen;
  }
  throw Error(ErrorCode::kNonInjectiveIndex, "no enumerated rational isolates a vertex");
}

double default_net_unit(std::size_t n, const Domain& dom) {
  // Smallest e with 2^(e*d) >= n, i.e. ceil(log2 n^(1/d)), in integers.
  int e = 0;
  while (e * dom.dim < 63 && (std::uint64_t{1} << (e * dom.dim)) < n) ++e;
  return std::ldexp(dom.side, -(e + 2));
}

std::vector<Edge> proximity_edges(const PointConfig& config, double threshold) {
  std::vector<Edge> edges;
  NeighborIndex index(config);
  for (PointId a = 0; a < config.size(); ++a) {
    index.visit_within(config.coords(a), threshold, [&](PointId b, double d) {
      if (b > a && d < threshold) edges.emplace_back(a, b);
    });
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

NetLevel net_level(const PointConfig& config, const IndexAssignment& idx, int level, double unit) {
  NetLevel out;
  out.level = level;
  out.separation = std::ldexp(unit, level);
  const auto edges = proximity_edges(config, out.separation);
  out.sites = independent_set(Adjacency(config.size(), edges), idx);
  return out;
}

NetHierarchy build_nets(const PointConfig& config, const IndexAssignment& idx, std::optional<double> unit) {
  const std::size_t n = config.size();
  if (n == 0) throw Error(ErrorCode::kBadParameters, "cannot build nets on an empty configuration");
  if (idx.size() != n) throw Error(ErrorCode::kBadParameters, "index does not match configuration");
  NetHierarchy nets;
  nets.unit = unit.value_or(default_net_unit(n, config.domain()));
  if (!(nets.unit > 0.0)) throw Error(ErrorCode::kBadParameters, "net unit must be positive");
  const std::size_t all_pairs = n * (n - 1) / 2;
  for (int k = 1; k <= 1100; ++k) {
    NetLevel lvl;
    lvl.level = k;
    lvl.separation = std::ldexp(nets.unit, k);
    const auto edges = proximity_edges(config, lvl.separation);
    lvl.sites = independent_set(Adjacency(n, edges), idx);
    nets.levels.push_back(std::move(lvl));
    if (edges.size() == all_pairs) break;
  }
  return nets;
}

}  // namespace ppf
