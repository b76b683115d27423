#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/domain.hpp"
#include "core/process.hpp"

namespace ppf::test {

inline PointConfig line_config(double side, std::vector<double> xs) {
  return PointConfig(Domain{1, side, Topology::kTorus}, std::move(xs), {});
}

inline PointConfig plane_config(double side, std::vector<double> xy, Topology t = Topology::kTorus) {
  return PointConfig(Domain{2, side, t}, std::move(xy), {});
}

inline PointConfig binomial(std::size_t n, std::uint64_t seed, int dim = 2, double side = 1.0) {
  return sample(SamplerSpec::binomial(n, seed), Domain{dim, side, Topology::kTorus});
}

// Brute-force minimum-image distance, written independently of the library.
inline double torus_distance(std::span<const double> a, std::span<const double> b, double side) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::fabs(a[i] - b[i]);
    d = std::min(d, side - d);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace ppf::test
