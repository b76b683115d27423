#include "core/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"

namespace ppf {

namespace {

std::vector<PointId> all_ids(const PointConfig& config) {
  std::vector<PointId> ids(config.size());
  std::iota(ids.begin(), ids.end(), PointId{0});
  return ids;
}

bool by_distance_then_id(const Neighbor& a, const Neighbor& b) {
  return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

}  // namespace

NeighborIndex::NeighborIndex(const PointConfig& config) : NeighborIndex(config, all_ids(config)) {}

NeighborIndex::NeighborIndex(const PointConfig& config, std::vector<PointId> subset)
    : config_(&config), members_(std::move(subset)) {
  const Domain& dom = config.domain();
  // About two members per cell, with the total cell count capped so high
  // dimensions degrade to a scan instead of an enormous empty grid.
  const double per_axis = std::pow(std::max<double>(1.0, members_.size() / 2.0), 1.0 / dom.dim);
  cells_per_axis_ = std::clamp(static_cast<int>(per_axis), 1, 256);
  while (cells_per_axis_ > 1 &&
         std::pow(static_cast<double>(cells_per_axis_), dom.dim) > 4.0 * members_.size() + 8.0) {
    --cells_per_axis_;
  }
  cell_width_ = dom.side / cells_per_axis_;

  std::size_t total = 1;
  for (int a = 0; a < dom.dim; ++a) total *= static_cast<std::size_t>(cells_per_axis_);
  std::vector<std::size_t> counts(total + 1, 0);
  std::vector<std::size_t> cell_of_member(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    cell_of_member[i] = cell_of(config.coords(members_[i]));
    ++counts[cell_of_member[i] + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  cell_start_ = counts;
  cell_items_.resize(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    cell_items_[counts[cell_of_member[i]]++] = members_[i];
  }
}

std::size_t NeighborIndex::cell_of(std::span<const double> x) const noexcept {
  std::size_t cell = 0;
  for (double coord : x) {
    int c = static_cast<int>(std::floor(coord / cell_width_));
    c = std::clamp(c, 0, cells_per_axis_ - 1);
    cell = cell * static_cast<std::size_t>(cells_per_axis_) + static_cast<std::size_t>(c);
  }
  return cell;
}

void NeighborIndex::axis_cells(double coord, double radius, std::vector<int>& out) const {
  out.clear();
  const int m = cells_per_axis_;
  const bool torus = config_->domain().topology == Topology::kTorus;
  const int lo = static_cast<int>(std::floor((coord - radius) / cell_width_));
  const int hi = static_cast<int>(std::floor((coord + radius) / cell_width_));
  if (torus) {
    if (hi - lo + 1 >= m) {
      for (int c = 0; c < m; ++c) out.push_back(c);
      return;
    }
    for (int c = lo; c <= hi; ++c) out.push_back(((c % m) + m) % m);
  } else {
    for (int c = std::max(lo, 0); c <= std::min(hi, m - 1); ++c) out.push_back(c);
  }
}

void NeighborIndex::visit_within(std::span<const double> x, double radius,
                                 const std::function<void(PointId, double)>& fn) const {
  const int dim = config_->dim();
  std::vector<std::vector<int>> ranges(dim);
  for (int a = 0; a < dim; ++a) {
    axis_cells(x[a], radius, ranges[a]);
    if (ranges[a].empty()) return;
  }
  // Padded squared prefilter; membership is decided on the distance itself
  // so that radius = distance(x, member) always includes that member.
  const double r2 = radius * radius * (1.0 + 1e-12);
  std::vector<std::size_t> pos(dim, 0);
  while (true) {
    std::size_t cell = 0;
    for (int a = 0; a < dim; ++a) {
      cell = cell * static_cast<std::size_t>(cells_per_axis_) + static_cast<std::size_t>(ranges[a][pos[a]]);
    }
    for (std::size_t i = cell_start_[cell]; i < cell_start_[cell + 1]; ++i) {
      const PointId id = cell_items_[i];
      const double d2 = squared_distance(x, config_->coords(id), config_->domain());
      if (d2 > r2) continue;
      const double d = std::sqrt(d2);
      if (d <= radius) fn(id, d);
    }
    int a = dim - 1;
    while (a >= 0 && ++pos[a] == ranges[a].size()) {
      pos[a] = 0;
      --a;
    }
    if (a < 0) break;
  }
}

std::vector<Neighbor> NeighborIndex::nearest(std::span<const double> x, std::size_t k,
                                             std::optional<PointId> exclude) const {
  std::vector<Neighbor> found;
  if (k == 0) return found;
  const double limit = config_->domain().diameter();
  // Start near the radius that holds k members on average.
  const double density = members_.size() / config_->domain().volume();
  double radius = std::pow((k + 1) / std::max(density, 1e-300), 1.0 / config_->dim()) * 0.75;
  radius = std::max(radius, cell_width_ * 0.5);
  while (true) {
    found.clear();
    const bool covers_all = radius >= limit;
    const double r = covers_all ? limit * (1.0 + 1e-9) : radius;
    visit_within(x, r, [&](PointId id, double d) {
      if (!exclude || id != *exclude) found.push_back({id, d});
    });
    if (found.size() >= k || covers_all) break;
    radius *= 2.0;
  }
  const std::size_t take = std::min(k, found.size());
  std::partial_sort(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(take), found.end(),
                    by_distance_then_id);
  found.resize(take);
  return found;
}

std::vector<Neighbor> k_nearest(const PointConfig& config, PointId x, std::size_t k) {
  if (k >= config.size()) {
    throw Error(ErrorCode::kNotEnoughPoints, "requested " + std::to_string(k) +
                                                 " neighbors from " + std::to_string(config.size()) +
                                                 " points");
  }
  if (k == 0) return {};
  NeighborIndex index(config);
  return index.nearest(config.coords(x), k, x);
}

}  // namespace ppf
