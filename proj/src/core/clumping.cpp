#include "core/clumping.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "core/error.hpp"

namespace ppf {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

std::vector<std::size_t> membership(const Partition& partition, std::size_t point_count) {
  std::vector<std::size_t> of(point_count, kNone);
  for (std::size_t c = 0; c < partition.clumps.size(); ++c) {
    for (PointId v : partition.clumps[c].members) {
      if (v < point_count) of[v] = c;
    }
  }
  return of;
}

Partition make_partition(std::vector<std::vector<PointId>> groups, const IndexAssignment& idx, int level) {
  Partition p;
  p.level = level;
  p.clumps.reserve(groups.size());
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    Clump c;
    c.max_member = idx.argmax(g);
    c.members = std::move(g);
    p.clumps.push_back(std::move(c));
  }
  std::sort(p.clumps.begin(), p.clumps.end(),
            [&](const Clump& a, const Clump& b) { return idx.rank[a.max_member] > idx.rank[b.max_member]; });
  return p;
}

NearestSites::NearestSites(const PointConfig& config, const NetHierarchy& nets, const IndexAssignment& idx) {
  const std::size_t n = config.size();
  nearest_.reserve(nets.levels.size());
  for (const NetLevel& lvl : nets.levels) {
    NeighborIndex sites(config, lvl.sites);
    std::vector<PointId> best(n);
    for (PointId v = 0; v < n; ++v) {
      const auto x = config.coords(v);
      const double d1 = sites.nearest(x, 1).front().distance;
      PointId pick = lvl.sites.front();
      bool found = false;
      sites.visit_within(x, d1, [&](PointId s, double d) {
        if (d == d1 && (!found || idx.rank[s] > idx.rank[pick])) {
          pick = s;
          found = true;
        }
      });
      if (!found) throw std::logic_error("nearest site not revisited");
      best[v] = pick;
    }
    nearest_.push_back(std::move(best));
  }
}

std::vector<PointId> clump_key(const NearestSites& sites, const NetHierarchy& nets, int level, PointId v) {
  std::vector<PointId> key;
  for (std::size_t i = 0; i < nets.levels.size(); ++i) {
    if (nets.levels[i].level >= level) key.push_back(sites.nearest(i, v));
  }
  return key;
}

Clumping build_voronoi_clumping(const PointConfig& config, const NetHierarchy& nets, const IndexAssignment& idx) {
  const std::size_t n = config.size();
  if (idx.size() != n) throw Error(ErrorCode::kBadParameters, "index does not match configuration");
  Clumping out;
  out.kind = ClumpingKind::kVoronoi;
  out.point_count = n;
  const NearestSites sites(config, nets, idx);

  // Keys nest: key_k = (nearest site at k, key_{k+1}), so clump ids are
  // assigned from the top level down.
  const std::size_t levels = nets.levels.size();
  std::vector<std::vector<std::size_t>> clump_id(levels, std::vector<std::size_t>(n));
  for (std::size_t li = levels; li-- > 0;) {
    std::map<std::pair<PointId, std::size_t>, std::size_t> ids;
    for (PointId v = 0; v < n; ++v) {
      const std::size_t above = li + 1 < levels ? clump_id[li + 1][v] : 0;
      const auto key = std::make_pair(sites.nearest(li, v), above);
      auto it = ids.try_emplace(key, ids.size()).first;
      clump_id[li][v] = it->second;
    }
  }
  for (std::size_t li = 0; li < levels; ++li) {
    std::size_t count = 0;
    for (std::size_t v = 0; v < n; ++v) count = std::max(count, clump_id[li][v] + 1);
    std::vector<std::vector<PointId>> groups(count);
    for (PointId v = 0; v < n; ++v) groups[clump_id[li][v]].push_back(v);
    out.partitions.push_back(make_partition(std::move(groups), idx, nets.levels[li].level));
  }
  if (out.partitions.empty() || out.partitions.back().clumps.size() > 1) {
    std::vector<std::vector<PointId>> all(1);
    for (PointId v = 0; v < n; ++v) all[0].push_back(v);
    const int top = out.partitions.empty() ? 1 : out.partitions.back().level + 1;
    Partition p = make_partition(std::move(all), idx, top);
    p.virtual_level = true;
    out.partitions.push_back(std::move(p));
  }
  return out;
}

ThickenedBoundaryProbe::ThickenedBoundaryProbe(const PointConfig& config, const NetHierarchy& nets) {
  levels_.reserve(nets.levels.size());
  for (const NetLevel& lvl : nets.levels) levels_.emplace_back(config, lvl.sites);
}

std::vector<bool> ThickenedBoundaryProbe::hits(std::span<const double> origin, double delta) const {
  std::vector<bool> out;
  out.reserve(levels_.size());
  for (const NeighborIndex& sites : levels_) {
    if (sites.size() < 2) {
      out.push_back(false);
      continue;
    }
    const auto nb = sites.nearest(origin, 2);
    out.push_back(nb[1].distance - nb[0].distance < 2.0 * delta);
  }
  return out;
}

std::vector<bool> thickened_boundary_hits(const PointConfig& config, const NetHierarchy& nets, double delta,
                                          std::span<const double> origin) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kBadParameters, "delta must be positive");
  return ThickenedBoundaryProbe(config, nets).hits(origin, delta);
}

ClumpingReport verify_clumping(const Clumping& clumping) {
  ClumpingReport report;
  const std::size_t n = clumping.point_count;
  if (clumping.partitions.empty()) {
    report.summary = "trivially connected: no levels";
    return report;
  }
  auto fail = [&](std::string check, int level, std::string detail, std::vector<PointId> witnesses) {
    report.ok = false;
    report.violations.push_back({std::move(check), level, std::move(detail), std::move(witnesses)});
  };

  std::vector<std::vector<std::size_t>> member_of;
  for (const Partition& p : clumping.partitions) {
    std::vector<std::size_t> of(n, kNone);
    std::size_t largest = 0;
    for (std::size_t c = 0; c < p.clumps.size(); ++c) {
      const auto& members = p.clumps[c].members;
      largest = std::max(largest, members.size());
      if (members.empty()) fail("finiteness", p.level, "empty clump", {});
      for (PointId v : members) {
        if (v >= n) {
          fail("coverage", p.level, "clump member out of range", {v});
        } else if (of[v] != kNone) {
          fail("coverage", p.level, "point in two clumps", {v});
        } else {
          of[v] = c;
        }
      }
    }
    for (PointId v = 0; v < n; ++v) {
      if (of[v] == kNone) fail("coverage", p.level, "point not covered", {v});
    }
    report.max_clump_size.push_back(largest);
    member_of.push_back(std::move(of));
  }

  for (std::size_t li = 0; li + 1 < clumping.partitions.size(); ++li) {
    const Partition& p = clumping.partitions[li];
    const auto& above = member_of[li + 1];
    for (const Clump& c : p.clumps) {
      if (c.members.empty()) continue;
      const PointId first = c.members.front();
      for (PointId v : c.members) {
        if (first < n && v < n && above[v] != above[first]) {
          fail("nesting", p.level,
               "clump split by level " + std::to_string(clumping.partitions[li + 1].level), {first, v});
          break;
        }
      }
    }
  }

  const Partition& top = clumping.partitions.back();
  if (top.clumps.size() != 1) {
    std::vector<PointId> witnesses;
    if (top.clumps.size() >= 2 && !top.clumps[0].members.empty() && !top.clumps[1].members.empty())
      witnesses = {top.clumps[0].members.front(), top.clumps[1].members.front()};
    fail("connectivity", top.level,
         "final partition has " + std::to_string(top.clumps.size()) + " clumps", std::move(witnesses));
  }
  report.summary = report.ok ? "clumping ok: " + std::to_string(clumping.partitions.size()) + " levels"
                             : std::to_string(report.violations.size()) + " violation(s)";
  return report;
}

}  // namespace ppf
