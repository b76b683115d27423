/* Point-process factor graphs: C interface. */
#ifndef PPF_PPF_H
#define PPF_PPF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PPF_BUILDING_LIBRARY)
#    define PPF_API __declspec(dllexport)
#  else
#    define PPF_API __declspec(dllimport)
#  endif
#else
#  define PPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppf_status {
  PPF_OK = 0,
  PPF_BAD_PARAMETERS = 1,
  PPF_PARSE_ERROR = 2,
  PPF_IO_ERROR = 3,
  PPF_NOT_ENOUGH_POINTS = 4,
  PPF_DIMENSION_UNSUPPORTED = 5,
  PPF_DEGENERATE_SITES = 6,
  PPF_WRAPPED_CELL = 7,
  PPF_NON_INJECTIVE_INDEX = 8,
  PPF_EQUAL_INDICES = 9,
  PPF_DISCONNECTED_CLUMPING = 10,
  PPF_NOT_A_TREE = 11,
  PPF_IMPERFECT_PAIRING = 12,
  PPF_POWER_OF_TWO_REQUIRED = 13,
  PPF_NOT_DYADIC = 14,
  PPF_DIMENSION_MISMATCH = 15,
  PPF_KERNEL_DIVERGED = 16,
  PPF_UNKNOWN_FORMAT = 17,
  PPF_INTERNAL_ERROR = 99
} ppf_status;

typedef struct ppf_config ppf_config;
typedef struct ppf_graph ppf_graph;
typedef struct ppf_report ppf_report;

/* Status name such as "NonInjectiveIndex"; never NULL. */
PPF_API const char* ppf_status_name(ppf_status status);
/* Message of the last failed call on this thread; "" if none. */
PPF_API const char* ppf_last_error(void);
PPF_API const char* ppf_version(void);
/* Frees strings returned through char** out-parameters. */
PPF_API void ppf_string_free(char* s);

/* ---- configurations ---------------------------------------------------- */

typedef struct ppf_sampler {
  const char* process;   /* "poisson", "binomial" or "lattice" */
  const char* topology;  /* "torus" or "box" */
  uint32_t dim;
  double side;
  double intensity;      /* poisson */
  uint64_t points;       /* binomial */
  double spacing;        /* lattice */
  uint64_t seed;
  uint64_t stream;
} ppf_sampler;

/* Binomial, d = 2, unit torus, seed 0. */
PPF_API void ppf_sampler_init(ppf_sampler* spec);
PPF_API ppf_status ppf_config_sample(const ppf_sampler* spec, ppf_config** out);
PPF_API ppf_status ppf_config_load(const char* path, ppf_config** out);
PPF_API ppf_status ppf_config_save(const ppf_config* config, const char* path);
PPF_API ppf_status ppf_config_to_json(const ppf_config* config, char** out);
PPF_API ppf_status ppf_config_from_json(const char* text, ppf_config** out);
/* Torus translation by `shift` (length dim). */
PPF_API ppf_status ppf_config_translate(const ppf_config* config, const double* shift, size_t dim, ppf_config** out);
PPF_API size_t ppf_config_size(const ppf_config* config);
PPF_API size_t ppf_config_dim(const ppf_config* config);
PPF_API double ppf_config_side(const ppf_config* config);
/* Point-major coordinates, size * dim values, owned by the config. */
PPF_API const double* ppf_config_coords(const ppf_config* config);
PPF_API void ppf_config_free(ppf_config* config);

/* ---- factor graphs ----------------------------------------------------- */

typedef struct ppf_build_options {
  uint32_t k0;              /* initial profile length */
  int32_t grid_dim;         /* grid target dimension n */
  const int32_t* schedule;  /* dyadic schedule, may be NULL */
  size_t schedule_len;
  int allow_remainder;
} ppf_build_options;

PPF_API void ppf_build_options_init(ppf_build_options* options);
/* what: "tree", "path" or "grid". options may be NULL. */
PPF_API ppf_status ppf_build(const ppf_config* config, const char* what, const ppf_build_options* options,
                             ppf_graph** out);

PPF_API const char* ppf_graph_kind(const ppf_graph* graph);
PPF_API size_t ppf_graph_vertex_count(const ppf_graph* graph);
PPF_API size_t ppf_graph_edge_count(const ppf_graph* graph);
/* Edge i joins pairs[2i] and pairs[2i+1]; owned by the graph. */
PPF_API const uint32_t* ppf_graph_edges(const ppf_graph* graph);
/* 0 when the graph has no coordinates. */
PPF_API size_t ppf_graph_coord_dim(const ppf_graph* graph);
PPF_API const int64_t* ppf_graph_coords(const ppf_graph* graph);
PPF_API ppf_status ppf_graph_save(const ppf_graph* graph, const char* path);
PPF_API ppf_status ppf_graph_load(const char* path, ppf_graph** out);
PPF_API ppf_status ppf_graph_to_json(const ppf_graph* graph, char** out);
/* format: "dot" or "csv"; table (csv only, may be NULL): "vertices",
 * "degrees" or "deficiency" (grids). */
PPF_API ppf_status ppf_graph_export(const ppf_graph* graph, const char* format, const char* table, char** out);
PPF_API void ppf_graph_free(ppf_graph* graph);

/* ---- verification ------------------------------------------------------ */

typedef struct ppf_verify_options {
  const uint64_t* seeds;
  size_t seed_count;
  size_t trials;
  size_t translations;
  size_t points;
  uint32_t dim;
  double side;
  double intensity;
  int32_t grid_dim;
  double delta_fraction;
  double lattice_spacing;
  size_t threads;  /* 0: all cores */
} ppf_verify_options;

PPF_API void ppf_verify_options_init(ppf_verify_options* options);
/* suite: "tree", "grid", "clumping", "mtp", "equivariance" or "all". */
PPF_API ppf_status ppf_verify(const char* suite, const ppf_verify_options* options, ppf_report** out);

/* kernel: "zero", "same_cell", "voronoi_ball", "thickened_boundary",
 * "grid_deficiency". The default parameters of each kernel follow the sampler. */
PPF_API ppf_status ppf_mtp_estimate(const char* kernel, const ppf_sampler* sampler, size_t trials, size_t threads,
                                    ppf_report** out);

PPF_API int ppf_report_passed(const ppf_report* report);
PPF_API size_t ppf_report_failures(const ppf_report* report);
/* JSON document owned by the report. */
PPF_API const char* ppf_report_json(const ppf_report* report);
/* Per-trial trace of an MTP report ("" otherwise), owned by the report. */
PPF_API const char* ppf_report_trace_csv(const ppf_report* report);
PPF_API void ppf_report_free(ppf_report* report);

#ifdef __cplusplus
}
#endif

#endif /* PPF_PPF_H */
