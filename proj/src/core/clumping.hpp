#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/index_value.hpp"
#include "core/indexing.hpp"
#include "core/spatial.hpp"

namespace ppf {

enum class ClumpingKind { kVoronoi, kDyadic };

struct Clump {
  std::vector<PointId> members;  // ascending id
  PointId max_member = 0;        // largest point index in the clump
  std::optional<IndexValue> representative;
  bool undersized = false;       // dyadic remainder mode only
};

struct Partition {
  int level = 0;
  // Dyadic: clumps have 2^exponent members. -1 for Voronoi partitions.
  int exponent = -1;
  bool virtual_level = false;
  std::vector<Clump> clumps;
};

struct Clumping {
  ClumpingKind kind = ClumpingKind::kVoronoi;
  std::size_t point_count = 0;
  std::vector<Partition> partitions;
};

// clump position of every point in `partition`; npos for uncovered points.
std::vector<std::size_t> membership(const Partition& partition, std::size_t point_count);

// Groups points into clumps ordered by descending max index.
Partition make_partition(std::vector<std::vector<PointId>> groups, const IndexAssignment& idx, int level);

// Nearest site of every point at every net level. Ties go to the site with
// the larger index.
class NearestSites {
 public:
  NearestSites(const PointConfig& config, const NetHierarchy& nets, const IndexAssignment& idx);
  PointId nearest(std::size_t level_pos, PointId v) const noexcept { return nearest_[level_pos][v]; }
  std::size_t level_count() const noexcept { return nearest_.size(); }

 private:
  std::vector<std::vector<PointId>> nearest_;
};

// Nearest V_i site for i = level..K (level is a net level number).
std::vector<PointId> clump_key(const NearestSites& sites, const NetHierarchy& nets, int level, PointId v);

// P_k groups points with equal nearest-site vectors over levels k..K; a
// virtual single-clump level closes the hierarchy when needed.
Clumping build_voronoi_clumping(const PointConfig& config, const NetHierarchy& nets,
                                const IndexAssignment& idx);

// Per net level: whether the origin is near the Voronoi boundary of V_k,
// judged by the gap between its nearest and second-nearest site distances.
class ThickenedBoundaryProbe {
 public:
  ThickenedBoundaryProbe(const PointConfig& config, const NetHierarchy& nets);
  std::vector<bool> hits(std::span<const double> origin, double delta) const;

 private:
  std::vector<NeighborIndex> levels_;
};

std::vector<bool> thickened_boundary_hits(const PointConfig& config, const NetHierarchy& nets, double delta,
                                          std::span<const double> origin);

struct ClumpingViolation {
  std::string check;  // coverage, finiteness, nesting, connectivity
  int level = 0;
  std::string detail;
  std::vector<PointId> witnesses;
};

struct ClumpingReport {
  bool ok = true;
  std::vector<ClumpingViolation> violations;
  std::vector<std::size_t> max_clump_size;  // per partition
  std::string summary;
};

ClumpingReport verify_clumping(const Clumping& clumping);

}  // namespace ppf
