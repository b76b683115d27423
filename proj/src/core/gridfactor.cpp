#include "core/gridfactor.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppf {

namespace {

constexpr std::int64_t kNoVertex = -1;

// Dense lookup from box position to vertex; kNoVertex where empty.
class BoxIndex {
 public:
  explicit BoxIndex(const GridEmbedding& g) : g_(g), strides_(g.n) {
    std::int64_t total = 1;
    for (int a = 0; a < g.n; ++a) {
      strides_[a] = total;
      total *= g.extents[a];
    }
    cells_.assign(static_cast<std::size_t>(total), kNoVertex);
    for (PointId v = 0; v < g.size(); ++v) {
      const auto pos = position(g.coord(v));
      if (pos < 0) {
        ++out_of_box_;
      } else if (cells_[pos] != kNoVertex) {
        ++collisions_;
      } else {
        cells_[pos] = v;
      }
    }
  }

  std::int64_t position(std::span<const std::int64_t> c) const noexcept {
    std::int64_t pos = 0;
    for (int a = 0; a < g_.n; ++a) {
      if (c[a] < 1 || c[a] > g_.extents[a]) return -1;
      pos += (c[a] - 1) * strides_[a];
    }
    return pos;
  }

  // Vertex one step from v along axis (0-based) in direction dir; wraps when
  // the grid is periodic.
  std::int64_t step(PointId v, int axis, int dir) const {
    std::vector<std::int64_t> c(g_.coord(v).begin(), g_.coord(v).end());
    c[axis] += dir;
    if (g_.periodic) {
      const std::int64_t ext = g_.extents[axis];
      c[axis] = ((c[axis] - 1) % ext + ext) % ext + 1;
    }
    const auto pos = position(c);
    return pos < 0 ? kNoVertex : cells_[pos];
  }

  std::size_t out_of_box() const noexcept { return out_of_box_; }
  std::size_t collisions() const noexcept { return collisions_; }
  std::size_t box_size() const noexcept { return cells_.size(); }

 private:
  const GridEmbedding& g_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int64_t> cells_;
  std::size_t out_of_box_ = 0;
  std::size_t collisions_ = 0;
};

std::uint64_t edge_key(PointId a, PointId b, std::size_t n) {
  const Edge e = make_edge(a, b);
  return static_cast<std::uint64_t>(e.first) * n + e.second;
}

}  // namespace

std::vector<std::int64_t> block_extents(int k, int n) {
  const int j = k / n;
  const int i = k % n;
  std::vector<std::int64_t> ext(n, std::int64_t{1} << j);
  for (int a = n - i; a < n; ++a) ext[a] = std::int64_t{1} << (j + 1);
  return ext;
}

int doubling_axis(int k, int n) { return n - (k % n); }

std::int64_t doubling_offset(int k, int n) { return std::int64_t{1} << (k / n); }

std::int64_t box_boundary_count(std::span<const std::int64_t> extents) {
  std::int64_t all = 1;
  std::int64_t inner = 1;
  for (std::int64_t e : extents) {
    all *= e;
    inner *= std::max<std::int64_t>(e - 2, 0);
  }
  return all - inner;
}

GridEmbedding grid_factor(const Clumping& dc, const IndexAssignment& idx, int n) {
  if (n < 1 || n > 62) throw Error(ErrorCode::kDimensionMismatch, "grid dimension must be in 1..62, got " + std::to_string(n));
  if (dc.kind != ClumpingKind::kDyadic) throw Error(ErrorCode::kNotDyadic, "clumping is not dyadic");
  const std::size_t count = dc.point_count;
  if (idx.size() != count) throw Error(ErrorCode::kBadParameters, "index does not match clumping");
  const int m = static_cast<int>(dc.partitions.size()) - 1;
  if (m < 0 || m > 62 || count != (std::size_t{1} << m)) {
    throw Error(ErrorCode::kNotDyadic, "need levels 0..m with N = 2^m");
  }
  for (int k = 0; k <= m; ++k) {
    const Partition& p = dc.partitions[k];
    if (p.exponent != k) throw Error(ErrorCode::kNotDyadic, "level " + std::to_string(k) + " does not double the previous");
    for (const Clump& c : p.clumps) {
      if (c.undersized || c.members.size() != (std::size_t{1} << k)) {
        throw Error(ErrorCode::kNotDyadic, "clump of size " + std::to_string(c.members.size()) + " at level " + std::to_string(k));
      }
    }
  }

  GridEmbedding g;
  g.n = n;
  g.m = m;
  g.extents = block_extents(m, n);
  g.coords.assign(count * n, 1);

  for (int k = 1; k <= m; ++k) {
    const Partition& below = dc.partitions[k - 1];
    const auto owner = membership(below, count);
    const int axis = doubling_axis(k - 1, n);
    const std::int64_t offset = doubling_offset(k - 1, n);
    for (const Clump& c : dc.partitions[k].clumps) {
      std::set<std::size_t> halves;
      for (PointId v : c.members) halves.insert(owner[v]);
      if (halves.size() != 2) throw Error(ErrorCode::kNotDyadic, "clump is not the union of two lower clumps");
      std::size_t kept = *halves.begin();
      std::size_t moved = *halves.rbegin();
      const Clump& a = below.clumps[kept];
      const Clump& b = below.clumps[moved];
      bool swap_blocks;
      if (k == 1) {
        swap_blocks = idx.less(b.members.front(), a.members.front());  // lower index stays at 1
      } else {
        if (!a.representative || !b.representative) throw Error(ErrorCode::kNotDyadic, "clump without representative");
        swap_blocks = *b.representative > *a.representative;
      }
      if (swap_blocks) std::swap(kept, moved);
      for (PointId v : below.clumps[moved].members) g.coords[static_cast<std::size_t>(v) * n + (axis - 1)] += offset;
      g.glues.push_back({k, kept, moved, axis, offset});
    }
  }

  g.edges.vertex_count = count;
  g.edges.kind = GraphKind::kGrid;
  g.edges.edges = grid_adjacency(g);
  return g;
}

GridEmbedding box_grid(std::span<const std::int64_t> extents, bool periodic) {
  GridEmbedding g;
  g.n = static_cast<int>(extents.size());
  g.extents.assign(extents.begin(), extents.end());
  g.periodic = periodic;
  std::size_t count = 1;
  for (std::int64_t e : extents) count *= static_cast<std::size_t>(e);
  g.coords.resize(count * g.n);
  for (std::size_t v = 0; v < count; ++v) {
    std::size_t rest = v;
    for (int a = 0; a < g.n; ++a) {
      g.coords[v * g.n + a] = static_cast<std::int64_t>(rest % extents[a]) + 1;
      rest /= extents[a];
    }
  }
  g.edges.vertex_count = count;
  g.edges.kind = GraphKind::kGrid;
  g.edges.edges = grid_adjacency(g);
  return g;
}

std::vector<Edge> grid_adjacency(const GridEmbedding& g) {
  const BoxIndex box(g);
  std::set<Edge> out;
  for (PointId v = 0; v < g.size(); ++v) {
    for (int a = 0; a < g.n; ++a) {
      const auto w = box.step(v, a, +1);
      if (w != kNoVertex && static_cast<PointId>(w) != v) out.insert(make_edge(v, static_cast<PointId>(w)));
    }
  }
  return {out.begin(), out.end()};
}

GridReport verify_grid(const GridEmbedding& g) {
  GridReport r;
  const BoxIndex box(g);
  if (box.out_of_box() != 0 || box.collisions() != 0 || box.box_size() != g.size()) {
    r.bijection = false;
    r.failures.push_back("coords are not a bijection onto the box: " + std::to_string(box.out_of_box()) +
                         " outside, " + std::to_string(box.collisions()) + " collisions");
  }

  FactorGraph actual = g.edges;
  actual.canonicalize();
  if (actual.edges != grid_adjacency(g)) {
    r.adjacency = false;
    r.failures.push_back("edge set differs from grid adjacency");
  }

  const Adjacency adj(g.size(), actual.edges);
  const std::size_t full = 2 * static_cast<std::size_t>(g.n);
  for (PointId v = 0; v < g.size(); ++v) {
    const auto c = g.coord(v);
    bool interior = true;
    for (int a = 0; a < g.n; ++a) interior = interior && c[a] > 1 && c[a] < g.extents[a];
    if ((interior || g.periodic) && adj.degree(v) != full) {
      if (r.interior_degree) r.failures.push_back("interior vertex " + std::to_string(v) + " has degree " + std::to_string(adj.degree(v)));
      r.interior_degree = false;
    }
    if (adj.degree(v) < full) ++r.deficient;
  }
  r.expected_deficient = g.periodic ? 0 : box_boundary_count(g.extents);
  if (static_cast<std::int64_t>(r.deficient) != r.expected_deficient) {
    r.failures.push_back("deficient count " + std::to_string(r.deficient) + " != boundary count " +
                         std::to_string(r.expected_deficient));
  }
  r.ok = r.failures.empty();
  return r;
}

DeficiencyTransport deficiency_transport(const GridEmbedding& g, std::size_t trials, std::uint64_t seed) {
  const std::size_t count = g.size();
  const BoxIndex box(g);
  std::unordered_set<std::uint64_t> edges;
  for (const auto& [a, b] : g.edges.edges) edges.insert(edge_key(a, b, count));
  auto neighbor = [&](PointId v, int axis, int dir) -> std::int64_t {
    const auto w = box.step(v, axis, dir);
    if (w == kNoVertex || static_cast<PointId>(w) == v) return kNoVertex;
    return edges.contains(edge_key(v, static_cast<PointId>(w), count)) ? w : kNoVertex;
  };

  DeficiencyTransport t;
  t.sent.assign(count, 0);
  t.received.assign(count, 0);
  t.receive_bound = 2 * static_cast<std::uint64_t>(g.n);
  for (PointId v = 0; v < count; ++v) {
    bool deficient = false;
    for (int a = 0; a < g.n; ++a) {
      for (int dir : {-1, +1}) {
        if (neighbor(v, a, dir) != kNoVertex) continue;
        deficient = true;
        for (auto u = neighbor(v, a, -dir); u != kNoVertex && static_cast<PointId>(u) != v;
             u = neighbor(static_cast<PointId>(u), a, -dir)) {
          ++t.sent[v];
          ++t.received[u];
        }
      }
    }
    if (deficient) ++t.deficient;
  }
  for (PointId v = 0; v < count; ++v) {
    t.sent_total += t.sent[v];
    t.received_total += t.received[v];
    t.max_received = std::max(t.max_received, t.received[v]);
  }
  t.bound_ok = t.max_received <= t.receive_bound;
  t.deficient_fraction = count == 0 ? 0.0 : static_cast<double>(t.deficient) / static_cast<double>(count);

  t.trials = count == 0 ? 0 : trials;
  if (t.trials > 0) {
    CounterRng rng(seed, 0);
    double so = 0, so2 = 0, si = 0, si2 = 0;
    for (std::size_t i = 0; i < t.trials; ++i) {
      const auto v = rng.below(count);
      const double o = static_cast<double>(t.sent[v]);
      const double in = static_cast<double>(t.received[v]);
      so += o;
      so2 += o * o;
      si += in;
      si2 += in * in;
    }
    const double tn = static_cast<double>(t.trials);
    t.mean_out = so / tn;
    t.mean_in = si / tn;
    if (t.trials > 1) {
      t.se_out = std::sqrt(std::max(0.0, (so2 - tn * t.mean_out * t.mean_out) / (tn - 1)) / tn);
      t.se_in = std::sqrt(std::max(0.0, (si2 - tn * t.mean_in * t.mean_in) / (tn - 1)) / tn);
    }
  }
  return t;
}

}  // namespace ppf
