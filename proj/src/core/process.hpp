#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "core/domain.hpp"

namespace ppf {

struct SamplerSpec {
  ProcessKind kind = ProcessKind::kBinomial;
  double intensity = 0.0;    // poisson
  std::uint64_t points = 0;  // binomial
  double spacing = 0.0;      // shifted_lattice
  std::uint64_t seed = 0;

  static SamplerSpec poisson(double intensity, std::uint64_t seed);
  static SamplerSpec binomial(std::uint64_t points, std::uint64_t seed);
  static SamplerSpec shifted_lattice(double spacing, std::uint64_t seed);
};

// Deterministic in (spec, dom, stream). Poisson and binomial points are
// i.i.d. uniform; the lattice is translated uniformly (and rotated uniformly
// for d = 2 in a box).
PointConfig sample(const SamplerSpec& spec, const Domain& dom, std::uint64_t stream = 0);

inline constexpr int kConfigSchemaVersion = 1;

std::string config_to_json(const PointConfig& config);
PointConfig config_from_json(const std::string& text);
void save_config(const PointConfig& config, const std::filesystem::path& path);
PointConfig load_config(const std::filesystem::path& path);

}  // namespace ppf
