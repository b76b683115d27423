#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "core/error.hpp"
#include "core/graph_io.hpp"
#include "core/pipeline.hpp"
#include "helpers.hpp"

using namespace ppf;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("graph documents round-trip") {
  const PointConfig cfg = test::binomial(64, 5);
  const GridArtifacts a = build_grid_artifacts(cfg);
  const GraphDocument grid = document_from_grid(a.grid);
  const GraphDocument back = graph_from_json(graph_to_json(grid));
  CHECK(back.graph.kind == GraphKind::kGrid);
  CHECK(back.graph.vertex_count == 64);
  CHECK(back.graph.edges == grid.graph.edges);
  CHECK(back.coord_dim == 2);
  CHECK(back.coords == grid.coords);

  GraphDocument tree;
  tree.graph = a.tree.tree;
  const auto path = std::filesystem::temp_directory_path() / "ppf_unit_graph.json";
  save_graph(tree, path);
  const GraphDocument loaded = load_graph(path);
  std::filesystem::remove(path);
  CHECK(loaded.graph.kind == GraphKind::kTree);
  CHECK(loaded.graph.edges == tree.graph.edges);
  CHECK(loaded.coord_dim == 0);
}

TEST_CASE("graph parse errors name the field") {
  CHECK_THROWS_WITH_AS(graph_from_json("{"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(graph_from_json(R"({"version":1,"kind":"tree","vertices":2,"edges":[[0,5]]})"),
                       doctest::Contains("vertices"), Error);
  CHECK_THROWS_WITH_AS(graph_from_json(R"({"version":1,"kind":"blob","vertices":2,"edges":[]})"),
                       doctest::Contains("kind"), Error);
  CHECK_THROWS_WITH_AS(graph_from_json(R"({"version":9,"kind":"tree","vertices":1,"edges":[]})"),
                       doctest::Contains("version"), Error);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), Error);
}

TEST_CASE("dot and csv exports") {
  const FactorGraph path{4, GraphKind::kPath, {{0, 1}, {1, 2}, {2, 3}}};
  const std::string dot = to_dot(path);
  CHECK(dot.rfind("graph path {", 0) == 0);
  CHECK(count_of(dot, " -- ") == 3);
  CHECK(dot.find("1 -- 2;") != std::string::npos);

  const FactorGraph empty{0, GraphKind::kTree, {}};
  CHECK(count_of(to_dot(empty), " -- ") == 0);

  CHECK(degree_histogram_csv(path) == "degree,count\n1,2\n2,2\n");

  GraphDocument doc;
  doc.graph = path;
  const std::string table = vertex_table_csv(doc);
  CHECK(table.rfind("id,degree\n", 0) == 0);
  CHECK(count_lines(table) == 5);

  const std::int64_t ext[] = {4};
  const GridEmbedding g = box_grid(ext, false);
  const std::string defic = deficiency_csv(g, deficiency_transport(g, 0));
  CHECK(defic.rfind("id,x1,degree,sent,received\n", 0) == 0);
  CHECK(count_lines(defic) == 5);
  const std::string grid_table = vertex_table_csv(document_from_grid(g));
  CHECK(grid_table.rfind("id,x1,degree\n", 0) == 0);

  TransportReport r;
  r.trace_out = {1.0, 0.5};
  r.trace_in = {0.0, 2.0};
  const std::string trace = mtp_trace_csv(r);
  CHECK(trace.rfind("trial,out,in\n", 0) == 0);
  CHECK(count_lines(trace) == 3);

  CHECK(export_format_from_string("dot") == ExportFormat::kDot);
  CHECK(export_format_from_string("csv") == ExportFormat::kCsv);
  CHECK_THROWS_WITH_AS(export_format_from_string("xml"), doctest::Contains("UnknownFormat"), Error);
}
