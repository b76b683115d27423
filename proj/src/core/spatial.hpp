#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "core/domain.hpp"

namespace ppf {

struct Neighbor {
  PointId id;
  double distance;
  bool operator==(const Neighbor&) const = default;
};

// Uniform cell list over a subset of a configuration, periodic when the
// domain is a torus. Queries are exact; the grid only prunes candidates.
class NeighborIndex {
 public:
  explicit NeighborIndex(const PointConfig& config);
  NeighborIndex(const PointConfig& config, std::vector<PointId> subset);

  std::size_t size() const noexcept { return members_.size(); }
  std::span<const PointId> members() const noexcept { return members_; }

  // Calls fn(id, distance) for every member with distance <= radius.
  void visit_within(std::span<const double> x, double radius,
                    const std::function<void(PointId, double)>& fn) const;

  // The k closest members to x ordered by (distance, id), skipping `exclude`.
  std::vector<Neighbor> nearest(std::span<const double> x, std::size_t k,
                                std::optional<PointId> exclude = std::nullopt) const;

 private:
  std::size_t cell_of(std::span<const double> x) const noexcept;
  void axis_cells(double coord, double radius, std::vector<int>& out) const;

  const PointConfig* config_;
  std::vector<PointId> members_;
  int cells_per_axis_ = 1;
  double cell_width_ = 1.0;
  std::vector<std::size_t> cell_start_;
  std::vector<PointId> cell_items_;
};

// k nearest other points of the configuration to point x, ties by id.
// Throws NotEnoughPoints when k >= N.
std::vector<Neighbor> k_nearest(const PointConfig& config, PointId x, std::size_t k);

}  // namespace ppf
