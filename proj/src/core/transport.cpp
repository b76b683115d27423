#include "core/transport.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/spatial.hpp"
#include "core/voronoi.hpp"

namespace ppf {

namespace {

constexpr std::uint64_t kOriginStream = 101;
constexpr std::uint64_t kKernelStream = 102;

void require_2d(const PointConfig& config, const std::string& kernel) {
  if (config.dim() != 2) {
    throw Error(ErrorCode::kDimensionUnsupported, kernel + " kernel needs d = 2, got d = " + std::to_string(config.dim()));
  }
}

std::vector<PointId> all_ids(std::size_t n) {
  std::vector<PointId> ids(n);
  for (PointId i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

// Cell of the site nearest to x among `sites`.
CellPolygon cell_containing(const PointConfig& config, const std::vector<PointId>& sites, std::span<const double> x) {
  const NeighborIndex index(config, sites);
  const auto nearest = index.nearest(x, 1);
  if (nearest.empty()) throw Error(ErrorCode::kNotEnoughPoints, "no sites");
  return voronoi_cell(config, sites, nearest.front().id);
}

class ZeroKernel final : public TransportKernel {
 public:
  std::string name() const override { return "zero"; }
  Flow flow_at(const PointConfig&, const Origin&, CounterRng&) const override { return {}; }
  std::optional<double> analytic_mass() const override { return 0.0; }
};

class SameCellKernel final : public TransportKernel {
 public:
  explicit SameCellKernel(std::optional<double> spacing) : spacing_(spacing) {}
  std::string name() const override { return "same_cell"; }
  Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng&) const override {
    require_2d(config, name());
    const CellPolygon cell = cell_containing(config, all_ids(config.size()), origin.x);
    return {cell.area, cell.area, 0.0, 0.0};
  }
  std::optional<double> analytic_mass() const override {
    if (!spacing_) return std::nullopt;
    return *spacing_ * *spacing_;
  }

 private:
  std::optional<double> spacing_;
};

class VoronoiBallKernel final : public TransportKernel {
 public:
  explicit VoronoiBallKernel(double volume) : radius_(std::sqrt(volume / std::numbers::pi)) {
    if (!(volume > 0.0)) throw Error(ErrorCode::kBadParameters, "ball volume must be positive");
  }
  std::string name() const override { return "voronoi_ball"; }
  Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng&) const override {
    require_2d(config, name());
    const CellPolygon cell = cell_containing(config, all_ids(config.size()), origin.x);
    const Vec2 o = lift_to_cell(cell, origin.x, config.domain());
    const double dx = o.x - cell.site_position.x;
    const double dy = o.y - cell.site_position.y;
    Flow f;
    f.out = disk_intersection_area(cell.vertices, cell.site_position, radius_);
    f.in = std::hypot(dx, dy) < radius_ ? cell.area : 0.0;
    return f;
  }

 private:
  double radius_;
};

class ThickenedBoundaryKernel final : public TransportKernel {
 public:
  ThickenedBoundaryKernel(int level, double delta) : level_(level), delta_(delta) {
    if (level < 1) throw Error(ErrorCode::kBadParameters, "net level must be >= 1");
    if (!(delta > 0.0)) throw Error(ErrorCode::kBadParameters, "delta must be positive");
  }
  std::string name() const override { return "thickened_boundary"; }
  Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng&) const override {
    require_2d(config, name());
    const IndexAssignment idx = build_index(config);
    const NetHierarchy nets = build_nets(config, idx);
    const NetLevel& net = nets.levels[std::min<std::size_t>(level_, nets.levels.size()) - 1];
    const CellPolygon cell = cell_containing(config, net.sites, origin.x);
    const Vec2 o = lift_to_cell(cell, origin.x, config.domain());
    Flow f;
    f.out = distance_to_cell_boundary(cell, o) < delta_ ? 1.0 : 0.0;
    f.in = std::clamp(1.0 - eroded_area(cell, delta_) / cell.area, 0.0, 1.0);
    return f;
  }

 private:
  int level_;
  double delta_;
};

class GridDeficiencyKernel final : public TransportKernel {
 public:
  explicit GridDeficiencyKernel(int n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::kDimensionMismatch, "grid dimension must be >= 1");
  }
  std::string name() const override { return "grid_deficiency"; }
  bool palm_origin() const override { return true; }
  Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng&) const override {
    BuildOptions options;
    options.grid_dim = n_;
    const GridArtifacts built = build_grid_artifacts(config, options);
    const DeficiencyTransport t = deficiency_transport(built.grid, 0);
    const PointId v = origin.point.value();
    return {static_cast<double>(t.sent[v]), static_cast<double>(t.received[v]), 0.0, 0.0};
  }

 private:
  int n_;
};

class PointwiseKernel final : public TransportKernel {
 public:
  PointwiseKernel(std::string name, PointKernel kernel, std::size_t samples)
      : name_(std::move(name)), kernel_(std::move(kernel)), samples_(samples) {
    if (samples_ < 2) throw Error(ErrorCode::kBadParameters, "need at least 2 secondary samples");
  }
  std::string name() const override { return name_; }
  Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng& rng) const override {
    const Domain& dom = config.domain();
    const double vol = dom.volume();
    std::vector<double> y(dom.dim);
    double so = 0, so2 = 0, si = 0, si2 = 0;
    for (std::size_t s = 0; s < samples_; ++s) {
      for (double& c : y) c = rng.uniform(0.0, dom.side);
      const double o = kernel_(origin.x, y, config);
      const double i = kernel_(y, origin.x, config);
      so += o;
      so2 += o * o;
      si += i;
      si2 += i * i;
    }
    const double n = static_cast<double>(samples_);
    const double mo = so / n;
    const double mi = si / n;
    Flow f;
    f.out = vol * mo;
    f.in = vol * mi;
    f.var_out = vol * vol * std::max(0.0, (so2 - n * mo * mo) / (n - 1)) / n;
    f.var_in = vol * vol * std::max(0.0, (si2 - n * mi * mi) / (n - 1)) / n;
    return f;
  }

 private:
  std::string name_;
  PointKernel kernel_;
  std::size_t samples_;
};

struct TrialResult {
  Flow flow;
  double scale = 1.0;
};

}  // namespace

KernelPtr zero_kernel() { return std::make_unique<ZeroKernel>(); }
KernelPtr same_cell_kernel(std::optional<double> spacing) { return std::make_unique<SameCellKernel>(spacing); }
KernelPtr voronoi_ball_kernel(double ball_volume) { return std::make_unique<VoronoiBallKernel>(ball_volume); }
KernelPtr thickened_boundary_kernel(int level, double delta) {
  return std::make_unique<ThickenedBoundaryKernel>(level, delta);
}
KernelPtr grid_deficiency_kernel(int n) { return std::make_unique<GridDeficiencyKernel>(n); }
KernelPtr pointwise_kernel(std::string name, PointKernel kernel, std::size_t samples) {
  return std::make_unique<PointwiseKernel>(std::move(name), std::move(kernel), samples);
}

double expected_count(const SamplerSpec& sampler, const Domain& dom) {
  switch (sampler.kind) {
    case ProcessKind::kPoisson: return sampler.intensity * dom.volume();
    case ProcessKind::kBinomial: return static_cast<double>(sampler.points);
    case ProcessKind::kShiftedLattice: return dom.volume() / std::pow(sampler.spacing, dom.dim);
  }
  return 0.0;
}

std::vector<KernelPtr> builtin_kernels(const SamplerSpec& sampler, const Domain& dom) {
  const double n = expected_count(sampler, dom);
  if (!(n > 0.0)) throw Error(ErrorCode::kBadParameters, "sampler has no expected points");
  std::vector<KernelPtr> out;
  out.push_back(voronoi_ball_kernel(dom.volume() / n));
  out.push_back(thickened_boundary_kernel(1, 0.005 * dom.side));
  out.push_back(grid_deficiency_kernel(2));
  return out;
}

TransportReport mtp_estimate(const TransportKernel& kernel, const SamplerSpec& sampler, const Domain& dom,
                             std::size_t trials, const MtpOptions& options) {
  dom.validate();
  if (trials == 0) throw Error(ErrorCode::kBadParameters, "trials must be >= 1");
  std::vector<TrialResult> results(trials);
  std::vector<std::exception_ptr> errors(trials);

  auto run_trial = [&](std::size_t t) {
    const std::uint64_t stream = t + 1;
    const PointConfig config = sample(sampler, dom, stream);
    const CounterRng base(sampler.seed, stream);
    CounterRng origin_rng = base.substream(kOriginStream);
    CounterRng kernel_rng = base.substream(kKernelStream);
    Origin origin;
    TrialResult r;
    if (kernel.palm_origin()) {
      if (config.size() == 0) throw Error(ErrorCode::kNotEnoughPoints, "empty configuration");
      const auto v = static_cast<PointId>(origin_rng.below(config.size()));
      origin.point = v;
      const auto c = config.coords(v);
      origin.x.assign(c.begin(), c.end());
      r.scale = static_cast<double>(config.size()) / dom.volume();
    } else {
      origin.x.resize(dom.dim);
      for (double& c : origin.x) c = origin_rng.uniform(0.0, dom.side);
    }
    r.flow = kernel.flow_at(config, origin, kernel_rng);
    const Flow& f = r.flow;
    if (!std::isfinite(f.out) || !std::isfinite(f.in) || f.out > options.mass_cap || f.in > options.mass_cap) {
      throw Error(ErrorCode::kKernelDiverged, "trial " + std::to_string(t) + " mass exceeds cap " +
                                                  std::to_string(options.mass_cap));
    }
    if (f.out < 0.0 || f.in < 0.0) throw Error(ErrorCode::kBadParameters, "kernel produced negative mass");
    results[t] = r;
  };

  std::size_t workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, trials);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      try {
        run_trial(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Sequential reduction in trial order.
  TransportReport rep;
  rep.kernel = kernel.name();
  rep.trials = trials;
  const double n = static_cast<double>(trials);
  double so = 0, so2 = 0, si = 0, si2 = 0, sec = 0, sc = 0;
  for (const TrialResult& r : results) {
    so += r.flow.out;
    so2 += r.flow.out * r.flow.out;
    si += r.flow.in;
    si2 += r.flow.in * r.flow.in;
    sec += r.flow.var_out + r.flow.var_in;
    sc += r.flow.out * r.scale;
    rep.max_abs_out_minus_in = std::max(rep.max_abs_out_minus_in, std::abs(r.flow.out - r.flow.in));
    rep.trace_out.push_back(r.flow.out);
    rep.trace_in.push_back(r.flow.in);
  }
  rep.out = so / n;
  rep.in = si / n;
  if (trials > 1) {
    rep.se_out = std::sqrt(std::max(0.0, (so2 - n * rep.out * rep.out) / (n - 1)) / n);
    rep.se_in = std::sqrt(std::max(0.0, (si2 - n * rep.in * rep.in) / (n - 1)) / n);
  }
  rep.secondary_se = std::sqrt(sec) / n;
  rep.c = sc / n;
  rep.pass = std::abs(rep.out - rep.in) <= 3.0 * (rep.se_out + rep.se_in);
  return rep;
}

}  // namespace ppf
