#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ppf {

using PointId = std::uint32_t;

enum class Topology { kTorus, kBox };

// Periodic (torus) or closed cube [0, L)^d.
struct Domain {
  int dim = 2;
  double side = 1.0;
  Topology topology = Topology::kTorus;

  void validate() const;
  double volume() const;
  // Largest possible distance between two points of the window.
  double diameter() const;
  bool operator==(const Domain&) const = default;
};

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

// Maps x into [0, L).
double wrap_coordinate(double x, double side) noexcept;

// Shortest displacement from a to b along one axis (torus: minimum image).
double axis_delta(double a, double b, const Domain& dom) noexcept;

double distance(std::span<const double> p, std::span<const double> q, const Domain& dom) noexcept;
double squared_distance(std::span<const double> p, std::span<const double> q,
                        const Domain& dom) noexcept;

enum class ProcessKind { kPoisson, kBinomial, kShiftedLattice };

std::string to_string(ProcessKind k);
ProcessKind process_kind_from_string(const std::string& s);

struct Provenance {
  ProcessKind kind = ProcessKind::kBinomial;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  bool operator==(const Provenance&) const = default;
};

// Finite point configuration in a window. Point ids are 0..N-1 in sampling
// order; coordinates are stored row-major.
class PointConfig {
 public:
  PointConfig() = default;
  PointConfig(Domain dom, std::vector<double> coords, Provenance prov);

  const Domain& domain() const noexcept { return domain_; }
  const Provenance& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(domain_.dim); }
  int dim() const noexcept { return domain_.dim; }

  std::span<const double> coords(PointId id) const noexcept {
    return {coords_.data() + static_cast<std::size_t>(id) * domain_.dim,
            static_cast<std::size_t>(domain_.dim)};
  }
  std::span<const double> raw_coords() const noexcept { return coords_; }

  double distance(PointId a, PointId b) const noexcept {
    return ppf::distance(coords(a), coords(b), domain_);
  }

  // Torus translation by `shift`; ids keep their points.
  PointConfig translated(std::span<const double> shift) const;

  bool operator==(const PointConfig&) const = default;

 private:
  Domain domain_;
  std::vector<double> coords_;
  Provenance provenance_;
};

}  // namespace ppf
