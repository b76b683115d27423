#include "core/suites.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/process.hpp"
#include "core/rng.hpp"
#include "core/spatial.hpp"
#include "core/transport.hpp"
#include "core/voronoi.hpp"

namespace ppf {

namespace {

constexpr std::uint64_t kTranslationStream = 1u << 20;

Domain suite_domain(const SuiteOptions& o) { return Domain{static_cast<int>(o.dim), o.side, Topology::kTorus}; }

PointConfig binomial_config(const SuiteOptions& o, std::uint64_t seed) {
  return sample(SamplerSpec::binomial(o.points, seed), suite_domain(o));
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::string seed_tag(std::uint64_t seed) { return " seed=" + std::to_string(seed); }

void add(SuiteReport& r, std::string name, bool pass, std::string detail = {}) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

// Runs fn and turns a domain error into a failed check.
template <class Fn>
void guarded(SuiteReport& r, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    add(r, name, false, e.what());
  }
}

bool is_hamiltonian_path(const FactorGraph& path) {
  const std::size_t n = path.vertex_count;
  if (!is_spanning_tree(n, path.edges)) return false;
  const Adjacency adj(n, path.edges);
  for (PointId v = 0; v < n; ++v) {
    if (adj.degree(v) > 2) return false;
  }
  return true;
}

// Exact sizes, nesting and pair locality of a dyadic result.
std::string dyadic_problems(const DyadicResult& d) {
  const Clumping& c = d.clumping;
  for (const Partition& p : c.partitions) {
    for (const Clump& k : p.clumps) {
      if (k.members.size() != (std::size_t{1} << p.exponent)) {
        return "level " + std::to_string(p.level) + " has a clump of size " + std::to_string(k.members.size());
      }
    }
  }
  for (std::size_t i = 1; i < c.partitions.size(); ++i) {
    const auto owner = membership(c.partitions[i - 1], c.point_count);
    for (const Clump& k : c.partitions[i].clumps) {
      std::vector<std::size_t> parts;
      for (PointId v : k.members) parts.push_back(owner[v]);
      std::sort(parts.begin(), parts.end());
      parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
      std::size_t covered = 0;
      for (std::size_t q : parts) covered += c.partitions[i - 1].clumps[q].members.size();
      if (covered != k.members.size()) return "level " + std::to_string(i) + " is not nested in level " + std::to_string(i - 1);
    }
  }
  if (c.partitions.empty() || c.partitions.back().clumps.size() != 1) return "top level is not a single clump";
  for (std::size_t s = 0; s < d.trees.size(); ++s) {
    if (!pairs_are_local(d.trees[s], d.pairings[s])) return "non-local pair at contraction " + std::to_string(s);
  }
  return {};
}

std::string check_volume_surface(const PointConfig& config) {
  const auto cells = voronoi_2d(config);
  const NeighborIndex index(config);
  std::size_t checked = 0;
  for (const CellPolygon& cell : cells) {
    if (cell.wrapped) continue;
    const auto nn = index.nearest(config.coords(cell.site), 1, cell.site);
    const double r = 0.5 * nn.front().distance;
    const auto res = volume_surface_check(cell, r);
    ++checked;
    if (!res.pass) return "cell " + std::to_string(cell.site) + " ratio " + std::to_string(res.ratio) + " < r/2";
  }
  return checked == 0 ? "no unwrapped cells" : std::string{};
}

template <class A, class B>
bool same_partitions(const A& a, const B& b) {
  if (a.partitions.size() != b.partitions.size()) return false;
  for (std::size_t i = 0; i < a.partitions.size(); ++i) {
    const auto& pa = a.partitions[i].clumps;
    const auto& pb = b.partitions[i].clumps;
    if (pa.size() != pb.size()) return false;
    for (std::size_t j = 0; j < pa.size(); ++j) {
      if (pa[j].members != pb[j].members || pa[j].max_member != pb[j].max_member) return false;
    }
  }
  return true;
}

bool same_nets(const NetHierarchy& a, const NetHierarchy& b) {
  if (a.levels.size() != b.levels.size()) return false;
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (a.levels[i].sites != b.levels[i].sites) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

}  // namespace

bool SuiteReport::pass() const noexcept { return failures() == 0; }

std::size_t SuiteReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; }));
}

std::vector<std::string> suite_names() { return {"tree", "grid", "clumping", "mtp", "equivariance", "all"}; }

SuiteReport tree_suite(const SuiteOptions& o) {
  SuiteReport r{"tree", {}};
  for (std::uint64_t seed : o.seeds) {
    guarded(r, "tree" + seed_tag(seed), [&] {
      const PointConfig config = binomial_config(o, seed);
      const TreeArtifacts t = build_tree_artifacts(config);
      add(r, "spanning_tree" + seed_tag(seed), is_spanning_tree(config.size(), t.tree.edges),
          std::to_string(t.tree.edges.size()) + " edges");
      const TreeStats stats = tree_stats(t.tree, t.clumping, t.index);
      add(r, "trunk_property" + seed_tag(seed), stats.trunk_property(),
          std::to_string(stats.trunk_violations.size()) + " violations, height " + std::to_string(stats.height));
      const PathFactor path = build_path(t);
      add(r, "hamiltonian_path" + seed_tag(seed), is_hamiltonian_path(path.path));
    });
  }
  return r;
}

SuiteReport clumping_suite(const SuiteOptions& o) {
  SuiteReport r{"clumping", {}};
  for (std::uint64_t seed : o.seeds) {
    guarded(r, "clumping" + seed_tag(seed), [&] {
      const PointConfig config = binomial_config(o, seed);
      const TreeArtifacts t = build_tree_artifacts(config);
      const ClumpingReport cr = verify_clumping(t.clumping);
      add(r, "voronoi_clumping" + seed_tag(seed), cr.ok, cr.summary);
      if (is_power_of_two(config.size())) {
        const std::string problem = dyadic_problems(build_dyadic(t));
        add(r, "dyadic_exact" + seed_tag(seed), problem.empty(), problem);
      }
      if (config.dim() == 2) {
        const std::string problem = check_volume_surface(config);
        add(r, "volume_surface" + seed_tag(seed), problem.empty(), problem);
      }
    });
  }
  return r;
}

SuiteReport grid_suite(const SuiteOptions& o) {
  SuiteReport r{"grid", {}};
  for (std::uint64_t seed : o.seeds) {
    guarded(r, "grid" + seed_tag(seed), [&] {
      const PointConfig config = binomial_config(o, seed);
      BuildOptions b;
      b.grid_dim = o.grid_dim;
      const GridArtifacts g = build_grid_artifacts(config, b);
      const GridReport gr = verify_grid(g.grid);
      std::string detail = "deficient " + std::to_string(gr.deficient) + " of " + std::to_string(g.grid.size()) +
                           ", boundary " + std::to_string(gr.expected_deficient);
      for (const auto& f : gr.failures) detail += "; " + f;
      add(r, "grid_embedding" + seed_tag(seed), gr.ok, detail);
      const DeficiencyTransport dt = deficiency_transport(g.grid, 0);
      add(r, "deficiency_transport" + seed_tag(seed), dt.bound_ok && dt.sent_total == dt.received_total,
          "sent " + std::to_string(dt.sent_total) + ", max received " + std::to_string(dt.max_received) + " (bound " +
              std::to_string(dt.receive_bound) + ")");
    });
  }
  return r;
}

SuiteReport mtp_suite(const SuiteOptions& o) {
  SuiteReport r{"mtp", {}};
  const std::uint64_t seed = o.seeds.empty() ? 0 : o.seeds.front();
  const Domain dom{2, o.side, Topology::kTorus};
  const SamplerSpec poisson = SamplerSpec::poisson(o.intensity, seed);
  MtpOptions mo;
  mo.threads = o.threads;
  auto report_check = [&](const TransportReport& rep) {
    add(r, "balance " + rep.kernel, rep.pass,
        "out " + fmt(rep.out) + " +- " + fmt(rep.se_out) + ", in " + fmt(rep.in) + " +- " + fmt(rep.se_in) + ", trials " +
            std::to_string(rep.trials));
  };
  guarded(r, "balance zero", [&] { report_check(mtp_estimate(*zero_kernel(), poisson, dom, std::min<std::size_t>(o.trials, 100), mo)); });
  guarded(r, "balance voronoi_ball", [&] {
    report_check(mtp_estimate(*voronoi_ball_kernel(dom.volume() / expected_count(poisson, dom)), poisson, dom, o.trials, mo));
  });
  guarded(r, "balance thickened_boundary", [&] {
    report_check(mtp_estimate(*thickened_boundary_kernel(1, o.delta_fraction * o.side), poisson, dom, o.trials, mo));
  });
  guarded(r, "lattice_control", [&] {
    const SamplerSpec lattice = SamplerSpec::shifted_lattice(o.lattice_spacing * o.side, seed);
    const auto kernel = same_cell_kernel(lattice.spacing);
    const TransportReport rep = mtp_estimate(*kernel, lattice, dom, std::min<std::size_t>(o.trials, 200), mo);
    const double expect = *kernel->analytic_mass();
    double worst = 0.0;
    for (std::size_t t = 0; t < rep.trials; ++t) {
      worst = std::max({worst, std::abs(rep.trace_out[t] - expect), std::abs(rep.trace_in[t] - expect)});
    }
    add(r, "lattice_control", worst <= 1e-12, "max |mass - s^2| = " + fmt(worst));
  });
  if (is_power_of_two(o.points)) {
    guarded(r, "balance grid_deficiency", [&] {
      const SamplerSpec binomial = SamplerSpec::binomial(o.points, seed);
      report_check(mtp_estimate(*grid_deficiency_kernel(o.grid_dim), binomial, dom, std::min<std::size_t>(o.trials, 100), mo));
    });
  }
  return r;
}

SuiteReport equivariance_suite(const SuiteOptions& o) {
  SuiteReport r{"equivariance", {}};
  const bool grid = is_power_of_two(o.points);
  for (std::uint64_t seed : o.seeds) {
    guarded(r, "equivariance" + seed_tag(seed), [&] {
      const PointConfig config = binomial_config(o, seed);
      BuildOptions b;
      b.grid_dim = o.grid_dim;
      const TreeArtifacts base = build_tree_artifacts(config, b);
      const PathFactor base_path = build_path(base);
      std::optional<GridArtifacts> base_grid;
      if (grid) base_grid = build_grid_artifacts(config, b);

      const std::vector<std::string> builders{"index", "nets", "clumping", "tree", "path", "dyadic", "grid"};
      std::vector<std::size_t> matches(builders.size(), 0);
      CounterRng rng(seed, kTranslationStream);
      for (std::size_t t = 0; t < o.translations; ++t) {
        std::vector<double> shift(config.dim());
        for (double& s : shift) s = rng.uniform(0.0, config.domain().side);
        const PointConfig moved = config.translated(shift);
        const TreeArtifacts a = build_tree_artifacts(moved, b);
        matches[0] += a.index.rank == base.index.rank && a.index.values == base.index.values;
        matches[1] += same_nets(a.nets, base.nets);
        matches[2] += same_partitions(a.clumping, base.clumping);
        matches[3] += a.tree.edges == base.tree.edges;
        matches[4] += build_path(a).order == base_path.order;
        if (base_grid) {
          const GridArtifacts g = build_grid_artifacts(moved, b);
          matches[5] += same_partitions(g.dyadic.clumping, base_grid->dyadic.clumping);
          matches[6] += g.grid.coords == base_grid->grid.coords && g.grid.edges.edges == base_grid->grid.edges.edges;
        }
      }
      const std::size_t active = grid ? builders.size() : 5;
      for (std::size_t i = 0; i < active; ++i) {
        add(r, builders[i] + seed_tag(seed), matches[i] == o.translations,
            std::to_string(matches[i]) + "/" + std::to_string(o.translations) + " identical");
      }
    });
  }
  return r;
}

std::vector<SuiteReport> run_suite(const std::string& suite, const SuiteOptions& options) {
  if (suite == "tree") return {tree_suite(options)};
  if (suite == "clumping") return {clumping_suite(options)};
  if (suite == "grid") return {grid_suite(options)};
  if (suite == "mtp") return {mtp_suite(options)};
  if (suite == "equivariance") return {equivariance_suite(options)};
  if (suite == "all") {
    return {tree_suite(options), clumping_suite(options), grid_suite(options), mtp_suite(options),
            equivariance_suite(options)};
  }
  throw Error(ErrorCode::kBadParameters, "unknown suite '" + suite + "'");
}

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const SuiteReport& r : reports) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    out.push_back({{"suite", r.suite}, {"pass", r.pass()}, {"failures", r.failures()}, {"checks", std::move(checks)}});
  }
  return out.dump(2) + "\n";
}

}  // namespace ppf
