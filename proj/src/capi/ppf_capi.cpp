#include "ppf/ppf.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/error.hpp"
#include "core/graph_io.hpp"
#include "core/pipeline.hpp"
#include "core/process.hpp"
#include "core/suites.hpp"
#include "core/transport.hpp"

struct ppf_config {
  ppf::PointConfig config;
};

struct ppf_graph {
  ppf::GraphDocument doc;
  std::vector<std::uint32_t> flat_edges;
  std::string kind;

  explicit ppf_graph(ppf::GraphDocument d) : doc(std::move(d)), kind(ppf::to_string(doc.graph.kind)) {
    flat_edges.reserve(2 * doc.graph.edges.size());
    for (const auto& [a, b] : doc.graph.edges) {
      flat_edges.push_back(a);
      flat_edges.push_back(b);
    }
  }
};

struct ppf_report {
  bool passed = false;
  std::size_t failures = 0;
  std::string json;
  std::string trace_csv;
};

namespace {

thread_local std::string last_error;

ppf_status fail(ppf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, mapping exceptions onto status codes and the thread's last error.
template <class Fn>
ppf_status guard(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return PPF_OK;
  } catch (const ppf::Error& e) {
    return fail(static_cast<ppf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PPF_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PPF_INTERNAL_ERROR, std::string("internal error: ") + e.what());
  } catch (...) {
    return fail(PPF_INTERNAL_ERROR, "internal error");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ppf::Error(ppf::ErrorCode::kBadParameters, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ppf::SamplerSpec sampler_spec(const ppf_sampler& s) {
  require(s.process, "sampler.process");
  ppf::SamplerSpec spec;
  spec.kind = ppf::process_kind_from_string(s.process);
  spec.intensity = s.intensity;
  spec.points = s.points;
  spec.spacing = s.spacing;
  spec.seed = s.seed;
  return spec;
}

ppf::Domain sampler_domain(const ppf_sampler& s) {
  ppf::Domain dom{static_cast<int>(s.dim), s.side, s.topology ? ppf::topology_from_string(s.topology) : ppf::Topology::kTorus};
  dom.validate();
  return dom;
}

ppf::BuildOptions build_options(const ppf_build_options* o) {
  ppf::BuildOptions b;
  if (o == nullptr) return b;
  b.k0 = o->k0;
  b.grid_dim = o->grid_dim;
  if (o->schedule_len > 0) {
    require(o->schedule, "options.schedule");
    b.schedule.assign(o->schedule, o->schedule + o->schedule_len);
  }
  b.allow_remainder = o->allow_remainder != 0;
  return b;
}

// Grid embedding recovered from a graph document with coordinates.
ppf::GridEmbedding embedding_from_document(const ppf::GraphDocument& doc) {
  if (doc.coord_dim == 0) throw ppf::Error(ppf::ErrorCode::kBadParameters, "graph has no grid coordinates");
  ppf::GridEmbedding g;
  g.n = doc.coord_dim;
  g.extents.assign(g.n, 1);
  for (std::size_t i = 0; i < doc.coords.size(); ++i) {
    g.extents[i % g.n] = std::max(g.extents[i % g.n], doc.coords[i]);
  }
  g.coords = doc.coords;
  g.edges = doc.graph;
  return g;
}

}  // namespace

extern "C" {

const char* ppf_status_name(ppf_status status) {
  switch (status) {
    case PPF_OK: return "Ok";
    case PPF_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  if (status >= PPF_BAD_PARAMETERS && status <= PPF_UNKNOWN_FORMAT) {
    return ppf::error_name(static_cast<ppf::ErrorCode>(status)).data();
  }
  return "UnknownStatus";
}

const char* ppf_last_error(void) { return last_error.c_str(); }

const char* ppf_version(void) { return "0.1.0"; }

void ppf_string_free(char* s) { delete[] s; }

void ppf_sampler_init(ppf_sampler* spec) {
  if (spec == nullptr) return;
  *spec = ppf_sampler{"binomial", "torus", 2, 1.0, 0.0, 0, 0.0, 0, 0};
}

ppf_status ppf_config_sample(const ppf_sampler* spec, ppf_config** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new ppf_config{ppf::sample(sampler_spec(*spec), sampler_domain(*spec), spec->stream)};
  });
}

ppf_status ppf_config_load(const char* path, ppf_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ppf_config{ppf::load_config(path)};
  });
}

ppf_status ppf_config_save(const ppf_config* config, const char* path) {
  return guard([&] {
    require(config, "config");
    require(path, "path");
    ppf::save_config(config->config, path);
  });
}

ppf_status ppf_config_to_json(const ppf_config* config, char** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    *out = copy_string(ppf::config_to_json(config->config));
  });
}

ppf_status ppf_config_from_json(const char* text, ppf_config** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new ppf_config{ppf::config_from_json(text)};
  });
}

ppf_status ppf_config_translate(const ppf_config* config, const double* shift, size_t dim, ppf_config** out) {
  return guard([&] {
    require(config, "config");
    require(shift, "shift");
    require(out, "out");
    *out = new ppf_config{config->config.translated(std::span<const double>(shift, dim))};
  });
}

size_t ppf_config_size(const ppf_config* config) { return config ? config->config.size() : 0; }
size_t ppf_config_dim(const ppf_config* config) { return config ? config->config.dim() : 0; }
double ppf_config_side(const ppf_config* config) { return config ? config->config.domain().side : 0.0; }
const double* ppf_config_coords(const ppf_config* config) {
  return config ? config->config.raw_coords().data() : nullptr;
}
void ppf_config_free(ppf_config* config) { delete config; }

void ppf_build_options_init(ppf_build_options* options) {
  if (options == nullptr) return;
  *options = ppf_build_options{2, 2, nullptr, 0, 0};
}

ppf_status ppf_build(const ppf_config* config, const char* what, const ppf_build_options* options, ppf_graph** out) {
  return guard([&] {
    require(config, "config");
    require(what, "what");
    require(out, "out");
    const ppf::BuildOptions b = build_options(options);
    const std::string kind = what;
    ppf::GraphDocument doc;
    if (kind == "tree") {
      doc.graph = ppf::build_tree_artifacts(config->config, b).tree;
    } else if (kind == "path") {
      doc.graph = ppf::build_path(ppf::build_tree_artifacts(config->config, b)).path;
    } else if (kind == "grid") {
      doc = ppf::document_from_grid(ppf::build_grid_artifacts(config->config, b).grid);
    } else {
      throw ppf::Error(ppf::ErrorCode::kBadParameters, "unknown build target '" + kind + "' (tree, path or grid)");
    }
    *out = new ppf_graph(std::move(doc));
  });
}

const char* ppf_graph_kind(const ppf_graph* graph) { return graph ? graph->kind.c_str() : ""; }
size_t ppf_graph_vertex_count(const ppf_graph* graph) { return graph ? graph->doc.graph.vertex_count : 0; }
size_t ppf_graph_edge_count(const ppf_graph* graph) { return graph ? graph->doc.graph.edges.size() : 0; }
const uint32_t* ppf_graph_edges(const ppf_graph* graph) { return graph ? graph->flat_edges.data() : nullptr; }
size_t ppf_graph_coord_dim(const ppf_graph* graph) {
  return graph ? static_cast<size_t>(graph->doc.coord_dim) : 0;
}
const int64_t* ppf_graph_coords(const ppf_graph* graph) {
  return graph && graph->doc.coord_dim > 0 ? graph->doc.coords.data() : nullptr;
}

ppf_status ppf_graph_save(const ppf_graph* graph, const char* path) {
  return guard([&] {
    require(graph, "graph");
    require(path, "path");
    ppf::save_graph(graph->doc, path);
  });
}

ppf_status ppf_graph_load(const char* path, ppf_graph** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ppf_graph(ppf::load_graph(path));
  });
}

ppf_status ppf_graph_to_json(const ppf_graph* graph, char** out) {
  return guard([&] {
    require(graph, "graph");
    require(out, "out");
    *out = copy_string(ppf::graph_to_json(graph->doc));
  });
}

ppf_status ppf_graph_export(const ppf_graph* graph, const char* format, const char* table, char** out) {
  return guard([&] {
    require(graph, "graph");
    require(format, "format");
    require(out, "out");
    const ppf::ExportFormat f = ppf::export_format_from_string(format);
    std::string text;
    if (f == ppf::ExportFormat::kDot) {
      text = ppf::to_dot(graph->doc.graph);
    } else {
      const std::string t = table ? table : "vertices";
      if (t == "vertices") {
        text = ppf::vertex_table_csv(graph->doc);
      } else if (t == "degrees") {
        text = ppf::degree_histogram_csv(graph->doc.graph);
      } else if (t == "deficiency") {
        const ppf::GridEmbedding g = embedding_from_document(graph->doc);
        text = ppf::deficiency_csv(g, ppf::deficiency_transport(g, 0));
      } else {
        throw ppf::Error(ppf::ErrorCode::kUnknownFormat, "unknown csv table '" + t + "' (vertices, degrees, deficiency)");
      }
    }
    *out = copy_string(text);
  });
}

void ppf_graph_free(ppf_graph* graph) { delete graph; }

void ppf_verify_options_init(ppf_verify_options* options) {
  if (options == nullptr) return;
  const ppf::SuiteOptions d;
  *options = ppf_verify_options{nullptr,    0,       d.trials,   d.translations,
                                d.points,   static_cast<uint32_t>(d.dim), d.side, d.intensity,
                                d.grid_dim, d.delta_fraction,              d.lattice_spacing, d.threads};
}

ppf_status ppf_verify(const char* suite, const ppf_verify_options* options, ppf_report** out) {
  return guard([&] {
    require(suite, "suite");
    require(out, "out");
    ppf::SuiteOptions o;
    if (options != nullptr) {
      if (options->seed_count > 0) {
        require(options->seeds, "options.seeds");
        o.seeds.assign(options->seeds, options->seeds + options->seed_count);
      }
      o.trials = options->trials;
      o.translations = options->translations;
      o.points = options->points;
      o.dim = options->dim;
      o.side = options->side;
      o.intensity = options->intensity;
      o.grid_dim = options->grid_dim;
      o.delta_fraction = options->delta_fraction;
      o.lattice_spacing = options->lattice_spacing;
      o.threads = options->threads;
    }
    const auto reports = ppf::run_suite(suite, o);
    auto report = std::make_unique<ppf_report>();
    report->passed = true;
    for (const auto& r : reports) {
      report->failures += r.failures();
      report->passed = report->passed && r.pass();
    }
    report->json = ppf::reports_to_json(reports);
    *out = report.release();
  });
}

ppf_status ppf_mtp_estimate(const char* kernel, const ppf_sampler* sampler, size_t trials, size_t threads,
                            ppf_report** out) {
  return guard([&] {
    require(kernel, "kernel");
    require(sampler, "sampler");
    require(out, "out");
    const ppf::SamplerSpec spec = sampler_spec(*sampler);
    const ppf::Domain dom = sampler_domain(*sampler);
    const std::string name = kernel;
    ppf::KernelPtr k;
    if (name == "zero") {
      k = ppf::zero_kernel();
    } else if (name == "same_cell") {
      k = ppf::same_cell_kernel(spec.kind == ppf::ProcessKind::kShiftedLattice ? std::optional<double>(spec.spacing)
                                                                                : std::nullopt);
    } else {
      for (auto& candidate : ppf::builtin_kernels(spec, dom)) {
        if (candidate->name() == name) k = std::move(candidate);
      }
    }
    if (!k) throw ppf::Error(ppf::ErrorCode::kBadParameters, "unknown kernel '" + name + "'");
    ppf::MtpOptions mo;
    mo.threads = threads;
    const ppf::TransportReport rep = ppf::mtp_estimate(*k, spec, dom, trials, mo);
    auto report = std::make_unique<ppf_report>();
    report->passed = rep.pass;
    report->failures = rep.pass ? 0 : 1;
    nlohmann::json j{{"kernel", rep.kernel}, {"trials", rep.trials},     {"out", rep.out},
                     {"in", rep.in},         {"se_out", rep.se_out},     {"se_in", rep.se_in},
                     {"c", rep.c},           {"secondary_se", rep.secondary_se}, {"pass", rep.pass}};
    if (const auto mass = k->analytic_mass()) j["analytic_mass"] = *mass;
    report->json = j.dump(2) + "\n";
    report->trace_csv = ppf::mtp_trace_csv(rep);
    *out = report.release();
  });
}

int ppf_report_passed(const ppf_report* report) { return report && report->passed ? 1 : 0; }
size_t ppf_report_failures(const ppf_report* report) { return report ? report->failures : 0; }
const char* ppf_report_json(const ppf_report* report) { return report ? report->json.c_str() : ""; }
const char* ppf_report_trace_csv(const ppf_report* report) { return report ? report->trace_csv.c_str() : ""; }
void ppf_report_free(ppf_report* report) { delete report; }

}  // extern "C"
