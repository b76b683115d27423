#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/domain.hpp"

namespace ppf {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Edge tag for polygon sides that are not a bisector with another site:
// the window boundary (box) or the bisector with the site's own periodic
// image (torus).
inline constexpr std::int64_t kNonVoronoiEdge = -1;

// A 2D Voronoi cell. On the torus the polygon is expressed in lifted
// coordinates around its site, so vertices may leave [0, L)^2; it is always
// convex in the lift. Edge i joins vertices[i] and vertices[i + 1] and was
// produced by site edge_generator[i].
struct CellPolygon {
  PointId site = 0;
  Vec2 site_position;
  std::vector<Vec2> vertices;
  std::vector<std::int64_t> edge_generator;
  double area = 0.0;
  double perimeter = 0.0;
  bool wrapped = false;
};

// Cells of all points of a 2D configuration.
std::vector<CellPolygon> voronoi_2d(const PointConfig& config);
// Cells of the given sites only (the other points are ignored).
std::vector<CellPolygon> voronoi_2d(const PointConfig& config, std::span<const PointId> sites);
// Single cell of `site` in the diagram of `sites`.
CellPolygon voronoi_cell(const PointConfig& config, std::span<const PointId> sites, PointId site);

struct VolumeSurfaceResult {
  double ratio = 0.0;
  bool pass = false;
};

// area / perimeter against r / 2; r is the inradius bound about the site.
VolumeSurfaceResult volume_surface_check(const CellPolygon& cell, double r);

// Position of window point x in the cell's lifted frame.
Vec2 lift_to_cell(const CellPolygon& cell, std::span<const double> x, const Domain& dom);

double polygon_area(std::span<const Vec2> poly);
double polygon_perimeter(std::span<const Vec2> poly);
double polygon_diameter(std::span<const Vec2> poly);
// Convex CCW polygon membership, boundary inclusive.
bool convex_contains(std::span<const Vec2> poly, Vec2 p);
// Area of poly intersected with the disk (center, radius).
double disk_intersection_area(std::span<const Vec2> poly, Vec2 center, double radius);

// Signed distance from p to the nearest line carrying a genuine Voronoi edge
// of the cell (positive inside). +inf when the cell has no such edge.
double distance_to_cell_boundary(const CellPolygon& cell, Vec2 p);
// Area of the part of the cell at distance >= delta from every genuine edge line.
double eroded_area(const CellPolygon& cell, double delta);

}  // namespace ppf
