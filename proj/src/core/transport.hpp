#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/process.hpp"
#include "core/rng.hpp"

namespace ppf {

// Uniform location in the window, or a uniformly chosen configuration point
// for kernels defined on points.
struct Origin {
  std::vector<double> x;
  std::optional<PointId> point;
};

// Mass leaving and entering the origin for one configuration. The variances
// are those of the estimates themselves (zero when computed in closed form).
struct Flow {
  double out = 0.0;
  double in = 0.0;
  double var_out = 0.0;
  double var_in = 0.0;
};

// Nonnegative, diagonally invariant transport T(x, y; config).
class TransportKernel {
 public:
  virtual ~TransportKernel() = default;
  virtual std::string name() const = 0;
  virtual Flow flow_at(const PointConfig& config, const Origin& origin, CounterRng& rng) const = 0;
  virtual bool palm_origin() const { return false; }
  // Exact expected mass, when known.
  virtual std::optional<double> analytic_mass() const { return std::nullopt; }
};

using KernelPtr = std::unique_ptr<TransportKernel>;
using PointKernel = std::function<double(std::span<const double> x, std::span<const double> y, const PointConfig&)>;

KernelPtr zero_kernel();
// 1 when x and y share a Voronoi cell of the configuration (2D). On a
// lattice of spacing s the mass is s^d.
KernelPtr same_cell_kernel(std::optional<double> lattice_spacing = std::nullopt);
// 1 when x and y share a Voronoi cell P and y lies in the disk of the given
// area about P's site (2D).
KernelPtr voronoi_ball_kernel(double ball_volume);
// 1/Vol(P) when y is in P and x is in P within delta of P's boundary; P runs
// over the Voronoi cells of the level-`level` net (2D).
KernelPtr thickened_boundary_kernel(int level, double delta);
// Grid deficiency transport from a typical point (power-of-two N only).
KernelPtr grid_deficiency_kernel(int n);
// Any kernel given pointwise; both integrals use `samples` uniform points.
KernelPtr pointwise_kernel(std::string name, PointKernel kernel, std::size_t samples = 1024);

// voronoi_ball (volume Vol/E[N]), thickened_boundary (level 1, delta 0.005 L)
// and grid_deficiency (n = 2).
std::vector<KernelPtr> builtin_kernels(const SamplerSpec& sampler, const Domain& dom);

double expected_count(const SamplerSpec& sampler, const Domain& dom);

struct MtpOptions {
  std::size_t threads = 0;  // 0: hardware concurrency
  double mass_cap = 1e12;
};

struct TransportReport {
  std::string kernel;
  std::size_t trials = 0;
  double out = 0.0;
  double in = 0.0;
  double se_out = 0.0;
  double se_in = 0.0;
  // Part of the standard errors due to secondary sampling.
  double secondary_se = 0.0;
  // Expected mass per unit volume of origins (mass per point for Palm kernels
  // scaled by N / Vol).
  double c = 0.0;
  double max_abs_out_minus_in = 0.0;  // largest single-trial difference
  bool pass = false;
  std::vector<double> trace_out;  // per-trial values, trial order
  std::vector<double> trace_in;
};

// Trial t samples the configuration from stream t + 1 of the sampler seed and
// draws its origin from a substream of the same stream, so reports do not
// depend on the thread count.
TransportReport mtp_estimate(const TransportKernel& kernel, const SamplerSpec& sampler, const Domain& dom,
                             std::size_t trials, const MtpOptions& options = {});

}  // namespace ppf
