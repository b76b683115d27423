#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/gridfactor.hpp"
#include "core/transport.hpp"

namespace ppf {

inline constexpr int kGraphSchemaVersion = 1;

// Graph file: edges plus, for grids, integer coordinates per vertex.
struct GraphDocument {
  FactorGraph graph;
  int coord_dim = 0;                  // 0 when there are no coordinates
  std::vector<std::int64_t> coords;   // vertex-major
};

GraphDocument document_from_grid(const GridEmbedding& g);

std::string graph_to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const std::string& text);
void save_graph(const GraphDocument& doc, const std::filesystem::path& path);
GraphDocument load_graph(const std::filesystem::path& path);

enum class ExportFormat { kDot, kCsv };
// Throws UnknownFormat.
ExportFormat export_format_from_string(const std::string& s);

std::string to_dot(const FactorGraph& graph);
// id[,x1..xn],degree
std::string vertex_table_csv(const GraphDocument& doc);
// degree,count
std::string degree_histogram_csv(const FactorGraph& graph);
// id,x1..xn,degree,sent,received
std::string deficiency_csv(const GridEmbedding& g, const DeficiencyTransport& t);
// trial,out,in
std::string mtp_trace_csv(const TransportReport& report);

}  // namespace ppf
