#include "core/process.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace ppf {

namespace {

using nlohmann::json;

std::vector<double> uniform_points(CounterRng& rng, std::uint64_t n, const Domain& dom) {
  std::vector<double> coords;
  coords.reserve(n * dom.dim);
  for (std::uint64_t i = 0; i < n * static_cast<std::uint64_t>(dom.dim); ++i) {
    coords.push_back(wrap_coordinate(rng.uniform01() * dom.side, dom.side));
  }
  return coords;
}

std::vector<double> lattice_points(CounterRng& rng, double spacing, const Domain& dom) {
  const int d = dom.dim;
  std::vector<double> shift(d);
  for (double& s : shift) s = rng.uniform01() * spacing;
  std::vector<double> coords;

  if (dom.topology == Topology::kTorus) {
    const double ratio = dom.side / spacing;
    const auto per_axis = static_cast<std::int64_t>(std::llround(ratio));
    if (per_axis < 1 || std::fabs(ratio - per_axis) > 1e-9 * ratio) {
      throw Error(ErrorCode::kBadParameters, "lattice spacing must divide the torus side");
    }
    std::vector<std::int64_t> idx(d, 0);
    while (true) {
      for (int a = 0; a < d; ++a) coords.push_back(wrap_coordinate(shift[a] + spacing * idx[a], dom.side));
      int a = d - 1;
      while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
      if (a < 0) break;
    }
    return coords;
  }

  // Box: cover the window generously, then keep lattice points inside it.
  const double angle = d == 2 ? rng.uniform01() * 2.0 * std::numbers::pi : 0.0;
  const double c = std::cos(angle), s = std::sin(angle);
  const double half = 0.5 * dom.side;
  const auto reach = static_cast<std::int64_t>(std::ceil(dom.side * std::sqrt(static_cast<double>(d)) / spacing)) + 1;
  std::vector<std::int64_t> idx(d, -reach);
  std::vector<double> p(d);
  while (true) {
    for (int a = 0; a < d; ++a) p[a] = shift[a] + spacing * idx[a];
    if (d == 2) {
      const double x = p[0], y = p[1];
      p[0] = half + c * x - s * y;
      p[1] = half + s * x + c * y;
    }
    bool inside = true;
    for (int a = 0; a < d; ++a) inside = inside && p[a] >= 0.0 && p[a] < dom.side;
    if (inside) coords.insert(coords.end(), p.begin(), p.end());
    int a = d - 1;
    while (a >= 0 && ++idx[a] > reach) idx[a--] = -reach;
    if (a < 0) break;
  }
  return coords;
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParseError, where + ": " + what);
}

}  // namespace

SamplerSpec SamplerSpec::poisson(double intensity, std::uint64_t seed) {
  SamplerSpec s;
  s.kind = ProcessKind::kPoisson;
  s.intensity = intensity;
  s.seed = seed;
  return s;
}

SamplerSpec SamplerSpec::binomial(std::uint64_t points, std::uint64_t seed) {
  SamplerSpec s;
  s.kind = ProcessKind::kBinomial;
  s.points = points;
  s.seed = seed;
  return s;
}

SamplerSpec SamplerSpec::shifted_lattice(double spacing, std::uint64_t seed) {
  SamplerSpec s;
  s.kind = ProcessKind::kShiftedLattice;
  s.spacing = spacing;
  s.seed = seed;
  return s;
}

PointConfig sample(const SamplerSpec& spec, const Domain& dom, std::uint64_t stream) {
  dom.validate();
  CounterRng rng(spec.seed, stream);
  Provenance prov;
  prov.kind = spec.kind;
  prov.seed = spec.seed;
  std::vector<double> coords;

  switch (spec.kind) {
    case ProcessKind::kPoisson: {
      if (!(spec.intensity > 0.0) || !std::isfinite(spec.intensity))
        throw Error(ErrorCode::kBadParameters, "poisson intensity must be positive");
      const double mean = spec.intensity * dom.volume();
      CounterRng count_rng = rng.substream(1);
      std::poisson_distribution<std::uint64_t> count(mean);
      const std::uint64_t n = count(count_rng);
      if (n == 0) throw Error(ErrorCode::kBadParameters, "poisson draw produced an empty configuration");
      CounterRng point_rng = rng.substream(2);
      coords = uniform_points(point_rng, n, dom);
      prov.params["intensity"] = spec.intensity;
      break;
    }
    case ProcessKind::kBinomial: {
      if (spec.points == 0) throw Error(ErrorCode::kBadParameters, "binomial point count must be positive");
      CounterRng point_rng = rng.substream(2);
      coords = uniform_points(point_rng, spec.points, dom);
      prov.params["points"] = static_cast<double>(spec.points);
      break;
    }
    case ProcessKind::kShiftedLattice: {
      if (!(spec.spacing > 0.0) || !std::isfinite(spec.spacing))
        throw Error(ErrorCode::kBadParameters, "lattice spacing must be positive");
      CounterRng lattice_rng = rng.substream(3);
      coords = lattice_points(lattice_rng, spec.spacing, dom);
      if (coords.empty()) throw Error(ErrorCode::kBadParameters, "lattice has no points in the window");
      prov.params["spacing"] = spec.spacing;
      break;
    }
  }
  if (stream != 0) prov.params["stream"] = static_cast<double>(stream);
  return PointConfig(dom, std::move(coords), std::move(prov));
}

std::string config_to_json(const PointConfig& config) {
  const Domain& dom = config.domain();
  json j;
  j["version"] = kConfigSchemaVersion;
  j["domain"] = {{"d", dom.dim}, {"L", dom.side}, {"topology", to_string(dom.topology)}};
  json points = json::array();
  for (std::size_t i = 0; i < config.size(); ++i) {
    json row = json::array();
    for (double x : config.coords(static_cast<PointId>(i))) row.push_back(x);
    points.push_back(std::move(row));
  }
  j["points"] = std::move(points);
  json params = json::object();
  for (const auto& [k, v] : config.provenance().params) params[k] = v;
  j["provenance"] = {{"kind", to_string(config.provenance().kind)},
                     {"params", std::move(params)},
                     {"seed", config.provenance().seed}};
  return j.dump(1) + "\n";
}

PointConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    parse_fail("line " + std::to_string(line), e.what());
  }
  if (!j.is_object()) parse_fail("document", "expected an object");
  if (!j.contains("version") || !j["version"].is_number_integer()) parse_fail("version", "missing or not an integer");
  if (j["version"].get<int>() != kConfigSchemaVersion)
    parse_fail("version", "unsupported schema version " + j["version"].dump());

  if (!j.contains("domain") || !j["domain"].is_object()) parse_fail("domain", "missing");
  const json& jd = j["domain"];
  Domain dom;
  if (!jd.contains("d") || !jd["d"].is_number_integer()) parse_fail("domain.d", "missing or not an integer");
  if (!jd.contains("L") || !jd["L"].is_number()) parse_fail("domain.L", "missing or not a number");
  dom.dim = jd["d"].get<int>();
  dom.side = jd["L"].get<double>();
  if (jd.contains("topology")) {
    if (!jd["topology"].is_string()) parse_fail("domain.topology", "not a string");
    const std::string t = jd["topology"].get<std::string>();
    if (t != "torus" && t != "box") parse_fail("domain.topology", "unknown value '" + t + "'");
    dom.topology = topology_from_string(t);
  }
  if (dom.dim < 1) parse_fail("domain.d", "must be >= 1 (invariant)");
  if (!(dom.side > 0.0)) parse_fail("domain.L", "must be positive (invariant)");

  if (!j.contains("points") || !j["points"].is_array()) parse_fail("points", "missing or not an array");
  const json& jp = j["points"];
  if (jp.empty()) parse_fail("points", "configuration must contain at least one point (invariant)");
  std::vector<double> coords;
  coords.reserve(jp.size() * dom.dim);
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    if (!jp[i].is_array() || jp[i].size() != static_cast<std::size_t>(dom.dim))
      parse_fail(where, "expected " + std::to_string(dom.dim) + " coordinates");
    for (std::size_t a = 0; a < jp[i].size(); ++a) {
      if (!jp[i][a].is_number()) parse_fail(where + "[" + std::to_string(a) + "]", "not a number");
      const double x = jp[i][a].get<double>();
      if (!(x >= 0.0 && x < dom.side)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "coordinate " << x << " outside [0, " << dom.side << ") (invariant)";
        parse_fail(where + "[" + std::to_string(a) + "]", msg.str());
      }
      coords.push_back(x);
    }
  }

  Provenance prov;
  if (!j.contains("provenance") || !j["provenance"].is_object()) parse_fail("provenance", "missing");
  const json& jr = j["provenance"];
  if (!jr.contains("kind") || !jr["kind"].is_string()) parse_fail("provenance.kind", "missing");
  try {
    prov.kind = process_kind_from_string(jr["kind"].get<std::string>());
  } catch (const Error&) {
    parse_fail("provenance.kind", "unknown process '" + jr["kind"].get<std::string>() + "'");
  }
  if (!jr.contains("seed") || !jr["seed"].is_number_unsigned()) parse_fail("provenance.seed", "missing or not unsigned");
  prov.seed = jr["seed"].get<std::uint64_t>();
  if (jr.contains("params")) {
    if (!jr["params"].is_object()) parse_fail("provenance.params", "not an object");
    for (const auto& [k, v] : jr["params"].items()) {
      if (!v.is_number()) parse_fail("provenance.params." + k, "not a number");
      prov.params[k] = v.get<double>();
    }
  }
  return PointConfig(dom, std::move(coords), std::move(prov));
}

void save_config(const PointConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  out << config_to_json(config);
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
}

PointConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

}  // namespace ppf
