#include "core/graph_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"

namespace ppf {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorCode::kParseError, where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, where + "." + key + ": " + e.what());
  }
}

std::vector<std::size_t> degrees(const FactorGraph& g) {
  std::vector<std::size_t> deg(g.vertex_count, 0);
  for (const auto& [a, b] : g.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

}  // namespace

GraphDocument document_from_grid(const GridEmbedding& g) {
  GraphDocument doc;
  doc.graph = g.edges;
  doc.coord_dim = g.n;
  doc.coords = g.coords;
  return doc;
}

std::string graph_to_json(const GraphDocument& doc) {
  json j;
  j["version"] = kGraphSchemaVersion;
  j["kind"] = to_string(doc.graph.kind);
  j["vertices"] = doc.graph.vertex_count;
  json edges = json::array();
  for (const auto& [a, b] : doc.graph.edges) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  if (doc.coord_dim > 0) {
    json coords = json::object();
    for (std::size_t v = 0; v < doc.graph.vertex_count; ++v) {
      const auto first = doc.coords.begin() + static_cast<std::ptrdiff_t>(v * doc.coord_dim);
      coords[std::to_string(v)] = std::vector<std::int64_t>(first, first + doc.coord_dim);
    }
    j["coords"] = std::move(coords);
  }
  return j.dump() + "\n";
}

GraphDocument graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("graph: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "graph: top level must be an object");
  const int version = field<int>(j, "version", "graph");
  if (version != kGraphSchemaVersion) {
    throw Error(ErrorCode::kParseError, "graph.version: unsupported version " + std::to_string(version));
  }
  GraphDocument doc;
  try {
    doc.graph.kind = graph_kind_from_string(field<std::string>(j, "kind", "graph"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kParseError, std::string("graph.kind: ") + e.what());
  }
  const auto edges = field<std::vector<std::vector<std::int64_t>>>(j, "edges", "graph");
  std::int64_t max_id = -1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "graph.edges[" + std::to_string(i) + "]";
    if (e.size() != 2) throw Error(ErrorCode::kParseError, where + ": expected [id, id]");
    if (e[0] < 0 || e[1] < 0 || e[0] > 0xffffffffLL || e[1] > 0xffffffffLL) {
      throw Error(ErrorCode::kParseError, where + ": id out of range");
    }
    if (e[0] == e[1]) throw Error(ErrorCode::kParseError, where + ": self-loop");
    doc.graph.edges.push_back(make_edge(static_cast<PointId>(e[0]), static_cast<PointId>(e[1])));
    max_id = std::max({max_id, e[0], e[1]});
  }
  std::size_t n = static_cast<std::size_t>(max_id + 1);
  if (j.contains("vertices")) {
    n = field<std::size_t>(j, "vertices", "graph");
    if (static_cast<std::int64_t>(n) <= max_id) throw Error(ErrorCode::kParseError, "graph.vertices: smaller than edge ids");
  }
  doc.graph.vertex_count = n;
  if (j.contains("coords")) {
    const auto coords = field<std::map<std::string, std::vector<std::int64_t>>>(j, "coords", "graph");
    if (coords.size() != n) throw Error(ErrorCode::kParseError, "graph.coords: need one entry per vertex");
    for (std::size_t v = 0; v < n; ++v) {
      const auto it = coords.find(std::to_string(v));
      if (it == coords.end()) throw Error(ErrorCode::kParseError, "graph.coords: missing vertex " + std::to_string(v));
      if (v == 0) doc.coord_dim = static_cast<int>(it->second.size());
      if (it->second.empty() || static_cast<int>(it->second.size()) != doc.coord_dim) {
        throw Error(ErrorCode::kParseError, "graph.coords." + it->first + ": inconsistent dimension");
      }
      doc.coords.insert(doc.coords.end(), it->second.begin(), it->second.end());
    }
  }
  return doc;
}

void save_graph(const GraphDocument& doc, const std::filesystem::path& path) { write_file(path, graph_to_json(doc)); }

GraphDocument load_graph(const std::filesystem::path& path) { return graph_from_json(read_file(path)); }

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "dot") return ExportFormat::kDot;
  if (s == "csv") return ExportFormat::kCsv;
  throw Error(ErrorCode::kUnknownFormat, "unknown export format '" + s + "' (expected dot or csv)");
}

std::string to_dot(const FactorGraph& graph) {
  std::ostringstream out;
  out << "graph " << to_string(graph.kind) << " {\n";
  for (std::size_t v = 0; v < graph.vertex_count; ++v) out << "  " << v << ";\n";
  for (const auto& [a, b] : graph.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

std::string vertex_table_csv(const GraphDocument& doc) {
  std::ostringstream out;
  out << "id";
  for (int a = 1; a <= doc.coord_dim; ++a) out << ",x" << a;
  out << ",degree\n";
  const auto deg = degrees(doc.graph);
  for (std::size_t v = 0; v < doc.graph.vertex_count; ++v) {
    out << v;
    for (int a = 0; a < doc.coord_dim; ++a) out << ',' << doc.coords[v * doc.coord_dim + a];
    out << ',' << deg[v] << '\n';
  }
  return out.str();
}

std::string degree_histogram_csv(const FactorGraph& graph) {
  std::map<std::size_t, std::size_t> hist;
  for (std::size_t d : degrees(graph)) ++hist[d];
  std::ostringstream out;
  out << "degree,count\n";
  for (const auto& [d, c] : hist) out << d << ',' << c << '\n';
  return out.str();
}

std::string deficiency_csv(const GridEmbedding& g, const DeficiencyTransport& t) {
  std::ostringstream out;
  out << "id";
  for (int a = 1; a <= g.n; ++a) out << ",x" << a;
  out << ",degree,sent,received\n";
  const auto deg = degrees(g.edges);
  for (PointId v = 0; v < g.size(); ++v) {
    out << v;
    for (std::int64_t c : g.coord(v)) out << ',' << c;
    out << ',' << deg[v] << ',' << t.sent[v] << ',' << t.received[v] << '\n';
  }
  return out.str();
}

std::string mtp_trace_csv(const TransportReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,out,in\n";
  for (std::size_t t = 0; t < report.trace_out.size(); ++t) {
    out << t << ',' << report.trace_out[t] << ',' << report.trace_in[t] << '\n';
  }
  return out.str();
}

}  // namespace ppf
