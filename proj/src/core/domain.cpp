#include "core/domain.hpp"

#include <cmath>

#include "core/error.hpp"

namespace ppf {

void Domain::validate() const {
  if (dim < 1) throw Error(ErrorCode::kBadParameters, "dimension must be >= 1");
  if (!(side > 0.0) || !std::isfinite(side))
    throw Error(ErrorCode::kBadParameters, "side length must be positive and finite");
}

double Domain::volume() const { return std::pow(side, dim); }

double Domain::diameter() const {
  const double per_axis = topology == Topology::kTorus ? side / 2.0 : side;
  return per_axis * std::sqrt(static_cast<double>(dim));
}

std::string to_string(Topology t) { return t == Topology::kTorus ? "torus" : "box"; }

Topology topology_from_string(const std::string& s) {
  if (s == "torus") return Topology::kTorus;
  if (s == "box") return Topology::kBox;
  throw Error(ErrorCode::kBadParameters, "unknown topology '" + s + "'");
}

double wrap_coordinate(double x, double side) noexcept {
  double r = std::fmod(x, side);
  if (r < 0.0) r += side;
  // fmod of a tiny negative value can round up to exactly `side`.
  if (r >= side) r = std::nextafter(side, 0.0);
  return r;
}

double axis_delta(double a, double b, const Domain& dom) noexcept {
  double d = b - a;
  if (dom.topology == Topology::kTorus) {
    const double half = 0.5 * dom.side;
    if (d > half) {
      d -= dom.side;
    } else if (d < -half) {
      d += dom.side;
    }
  }
  return d;
}

double squared_distance(std::span<const double> p, std::span<const double> q,
                        const Domain& dom) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::fabs(p[i] - q[i]);
    if (dom.topology == Topology::kTorus) d = std::fmin(d, dom.side - d);
    sum += d * d;
  }
  return sum;
}

double distance(std::span<const double> p, std::span<const double> q, const Domain& dom) noexcept {
  return std::sqrt(squared_distance(p, q, dom));
}

std::string to_string(ProcessKind k) {
  switch (k) {
    case ProcessKind::kPoisson: return "poisson";
    case ProcessKind::kBinomial: return "binomial";
    case ProcessKind::kShiftedLattice: return "shifted_lattice";
  }
  return "unknown";
}

ProcessKind process_kind_from_string(const std::string& s) {
  if (s == "poisson") return ProcessKind::kPoisson;
  if (s == "binomial") return ProcessKind::kBinomial;
  if (s == "shifted_lattice" || s == "lattice") return ProcessKind::kShiftedLattice;
  throw Error(ErrorCode::kBadParameters, "unknown process kind '" + s + "'");
}

PointConfig::PointConfig(Domain dom, std::vector<double> coords, Provenance prov)
    : domain_(dom), coords_(std::move(coords)), provenance_(std::move(prov)) {
  domain_.validate();
  if (coords_.size() % static_cast<std::size_t>(domain_.dim) != 0)
    throw Error(ErrorCode::kBadParameters, "coordinate count is not a multiple of the dimension");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double x = coords_[i];
    if (!(x >= 0.0 && x < domain_.side)) {
      throw Error(ErrorCode::kBadParameters,
                  "point " + std::to_string(i / domain_.dim) + " coordinate " +
                      std::to_string(i % domain_.dim) + " outside [0, L)");
    }
  }
}

PointConfig PointConfig::translated(std::span<const double> shift) const {
  if (shift.size() != static_cast<std::size_t>(domain_.dim))
    throw Error(ErrorCode::kBadParameters, "translation has wrong dimension");
  std::vector<double> moved(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    moved[i] = wrap_coordinate(coords_[i] + shift[i % domain_.dim], domain_.side);
  }
  return PointConfig(domain_, std::move(moved), provenance_);
}

}  // namespace ppf
