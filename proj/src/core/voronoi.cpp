#include "core/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace ppf {

namespace {

struct TaggedVertex {
  Vec2 p;
  std::int64_t tag;  // tag of the edge leaving p
};

using TaggedPolygon = std::vector<TaggedVertex>;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 sub(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Keeps {p : n.p <= c}; the new side carries `tag`.
TaggedPolygon clip(const TaggedPolygon& poly, Vec2 n, double c, std::int64_t tag, double tol) {
  TaggedPolygon out;
  const std::size_t m = poly.size();
  out.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const TaggedVertex& a = poly[i];
    const TaggedVertex& b = poly[(i + 1) % m];
    const double fa = dot(n, a.p) - c;
    const double fb = dot(n, b.p) - c;
    const bool ina = fa <= 0.0;
    const bool inb = fb <= 0.0;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double s = fa / (fa - fb);
      const Vec2 hit{a.p.x + s * (b.p.x - a.p.x), a.p.y + s * (b.p.y - a.p.y)};
      out.push_back({hit, ina ? tag : a.tag});
    }
  }
  // Drop vertices whose outgoing edge has collapsed; the incoming edge keeps its tag.
  if (out.size() > 2) {
    TaggedPolygon cleaned;
    cleaned.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Vec2 next = out[(i + 1) % out.size()].p;
      if (norm(sub(next, out[i].p)) > tol) cleaned.push_back(out[i]);
    }
    out.swap(cleaned);
  }
  if (out.size() < 3) out.clear();
  return out;
}

TaggedPolygon square(Vec2 lo, Vec2 hi) {
  return {{{lo.x, lo.y}, kNonVoronoiEdge},
          {{hi.x, lo.y}, kNonVoronoiEdge},
          {{hi.x, hi.y}, kNonVoronoiEdge},
          {{lo.x, hi.y}, kNonVoronoiEdge}};
}

struct Candidate {
  Vec2 p;
  double dist;
  PointId id;
};

CellPolygon build_cell(const PointConfig& config, std::span<const PointId> sites, PointId site) {
  const Domain& dom = config.domain();
  if (dom.dim != 2) {
    throw Error(ErrorCode::kDimensionUnsupported,
                "Voronoi cells need d = 2, got d = " + std::to_string(dom.dim));
  }
  const double L = dom.side;
  const bool torus = dom.topology == Topology::kTorus;
  const Vec2 s{config.coords(site)[0], config.coords(site)[1]};
  const double tol = 1e-12 * L;

  std::vector<Candidate> candidates;
  candidates.reserve(sites.size() * (torus ? 9 : 1));
  for (PointId other : sites) {
    if (other == site) continue;
    const Vec2 t{config.coords(other)[0], config.coords(other)[1]};
    for (int zx = torus ? -1 : 0; zx <= (torus ? 1 : 0); ++zx) {
      for (int zy = torus ? -1 : 0; zy <= (torus ? 1 : 0); ++zy) {
        const Vec2 img{t.x + zx * L, t.y + zy * L};
        const double d = norm(sub(img, s));
        if (d == 0.0) {
          throw Error(ErrorCode::kDegenerateSites,
                      "sites " + std::to_string(site) + " and " + std::to_string(other) + " coincide");
        }
        candidates.push_back({img, d, other});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.dist < b.dist || (a.dist == b.dist && a.id < b.id);
  });

  TaggedPolygon poly = torus ? square({s.x - L / 2, s.y - L / 2}, {s.x + L / 2, s.y + L / 2})
                             : square({0.0, 0.0}, {L, L});
  double reach = 0.0;
  for (const TaggedVertex& v : poly) reach = std::max(reach, norm(sub(v.p, s)));
  for (const Candidate& c : candidates) {
    // A bisector at distance dist/2 from s cannot cut a polygon of radius `reach`.
    if (c.dist > 2.0 * reach) break;
    const Vec2 n = sub(c.p, s);
    const double offset = 0.5 * (dot(c.p, c.p) - dot(s, s));
    poly = clip(poly, n, offset, static_cast<std::int64_t>(c.id), tol);
    reach = 0.0;
    for (const TaggedVertex& v : poly) reach = std::max(reach, norm(sub(v.p, s)));
  }

  CellPolygon cell;
  cell.site = site;
  cell.site_position = s;
  for (const TaggedVertex& v : poly) {
    cell.vertices.push_back(v.p);
    cell.edge_generator.push_back(v.tag);
  }
  cell.area = polygon_area(cell.vertices);
  cell.perimeter = polygon_perimeter(cell.vertices);
  cell.wrapped = torus && polygon_diameter(cell.vertices) >= L / 2;
  return cell;
}

// Signed area of disk(0, r) intersected with triangle (0, a, b).
double triangle_disk_area(Vec2 a, Vec2 b, double r) {
  const Vec2 d = sub(b, a);
  const double qa = dot(d, d);
  if (qa == 0.0) return 0.0;
  const double qb = 2.0 * dot(a, d);
  const double qc = dot(a, a) - r * r;
  double cuts[4] = {0.0, 0.0, 0.0, 1.0};
  int count = 1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double t1 = (-qb - sq) / (2.0 * qa);
    const double t2 = (-qb + sq) / (2.0 * qa);
    if (t1 > 0.0 && t1 < 1.0) cuts[count++] = t1;
    if (t2 > 0.0 && t2 < 1.0) cuts[count++] = t2;
  }
  cuts[count++] = 1.0;
  double total = 0.0;
  for (int i = 0; i + 1 < count; ++i) {
    const Vec2 p{a.x + cuts[i] * d.x, a.y + cuts[i] * d.y};
    const Vec2 q{a.x + cuts[i + 1] * d.x, a.y + cuts[i + 1] * d.y};
    const double tm = 0.5 * (cuts[i] + cuts[i + 1]);
    const Vec2 mid{a.x + tm * d.x, a.y + tm * d.y};
    if (dot(mid, mid) <= r * r) {
      total += 0.5 * cross(p, q);
    } else {
      total += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
    }
  }
  return total;
}

}  // namespace

std::vector<CellPolygon> voronoi_2d(const PointConfig& config, std::span<const PointId> sites) {
  if (config.dim() != 2) {
    throw Error(ErrorCode::kDimensionUnsupported,
                "Voronoi cells need d = 2, got d = " + std::to_string(config.dim()));
  }
  if (sites.size() < 2) throw Error(ErrorCode::kBadParameters, "Voronoi diagram needs >= 2 sites");
  std::vector<CellPolygon> cells;
  cells.reserve(sites.size());
  for (PointId s : sites) cells.push_back(build_cell(config, sites, s));
  return cells;
}

std::vector<CellPolygon> voronoi_2d(const PointConfig& config) {
  std::vector<PointId> ids(config.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
  return voronoi_2d(config, ids);
}

CellPolygon voronoi_cell(const PointConfig& config, std::span<const PointId> sites, PointId site) {
  return build_cell(config, sites, site);
}

VolumeSurfaceResult volume_surface_check(const CellPolygon& cell, double r) {
  if (cell.wrapped) {
    throw Error(ErrorCode::kWrappedCell,
                "cell of site " + std::to_string(cell.site) + " wraps the torus; convexity not guaranteed");
  }
  VolumeSurfaceResult result;
  result.ratio = cell.perimeter > 0.0 ? cell.area / cell.perimeter : 0.0;
  result.pass = result.ratio >= r / 2.0 - 1e-9;
  return result;
}

Vec2 lift_to_cell(const CellPolygon& cell, std::span<const double> x, const Domain& dom) {
  const double sx[2] = {cell.site_position.x, cell.site_position.y};
  return {sx[0] + axis_delta(sx[0], x[0], dom), sx[1] + axis_delta(sx[1], x[1], dom)};
}

double polygon_area(std::span<const Vec2> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * twice;
}

double polygon_perimeter(std::span<const Vec2> poly) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) total += norm(sub(poly[(i + 1) % poly.size()], poly[i]));
  return total;
}

double polygon_diameter(std::span<const Vec2> poly) {
  double best = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j) best = std::max(best, norm(sub(poly[i], poly[j])));
  return best;
}

bool convex_contains(std::span<const Vec2> poly, Vec2 p) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    if (cross(sub(b, a), sub(p, a)) < 0.0) return false;
  }
  return true;
}

double disk_intersection_area(std::span<const Vec2> poly, Vec2 center, double radius) {
  double total = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    total += triangle_disk_area(sub(poly[i], center), sub(poly[(i + 1) % poly.size()], center), radius);
  }
  return std::fabs(total);
}

double distance_to_cell_boundary(const CellPolygon& cell, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = cell.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (cell.edge_generator[i] == kNonVoronoiEdge) continue;
    const Vec2 a = cell.vertices[i];
    const Vec2 e = sub(cell.vertices[(i + 1) % m], a);
    // CCW polygon: interior lies to the left of each edge.
    best = std::min(best, cross(e, sub(p, a)) / norm(e));
  }
  return best;
}

double eroded_area(const CellPolygon& cell, double delta) {
  TaggedPolygon poly;
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) poly.push_back({cell.vertices[i], cell.edge_generator[i]});
  const std::size_t m = cell.vertices.size();
  for (std::size_t i = 0; i < m && !poly.empty(); ++i) {
    if (cell.edge_generator[i] == kNonVoronoiEdge) continue;
    const Vec2 a = cell.vertices[i];
    const Vec2 e = sub(cell.vertices[(i + 1) % m], a);
    const double len = norm(e);
    const Vec2 outward{e.y / len, -e.x / len};
    poly = clip(poly, outward, dot(outward, a) - delta, kNonVoronoiEdge, 0.0);
  }
  std::vector<Vec2> verts;
  for (const TaggedVertex& v : poly) verts.push_back(v.p);
  return polygon_area(verts);
}

}  // namespace ppf
