// Copyright 2026 The geocomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the geocomm library. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every fallible
 * call returns a gc_status; on failure gc_last_error() describes the problem
 * for the calling thread until its next failing call.
 */
#ifndef GEOCOMM_GEOCOMM_H_
#define GEOCOMM_GEOCOMM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GEOCOMM_BUILDING_LIBRARY)
#define GC_API __declspec(dllexport)
#else
#define GC_API __declspec(dllimport)
#endif
#else
#define GC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gc_status {
  GC_OK = 0,
  GC_ERR_ARGUMENT = 1,
  GC_ERR_VALIDATION = 2,
  GC_ERR_PIPELINE = 3,
  GC_ERR_PARSE = 4,
  GC_ERR_IO = 5,
  GC_ERR_DOMAIN = 6,
  GC_ERR_SOLVER = 7,
  GC_ERR_RESOURCE = 8,
  GC_ERR_INTERNAL = 9
} gc_status;

typedef enum gc_model { GC_MODEL_SBM = 0, GC_MODEL_IRGM = 1, GC_MODEL_DCBM = 2 } gc_model;
typedef enum gc_clusterer { GC_CLUSTER_KMEANS = 0, GC_CLUSTER_GMM = 1 } gc_clusterer;
typedef enum gc_ordering { GC_ORDER_ALGEBRAIC = 0, GC_ORDER_ABSOLUTE = 1 } gc_ordering;
typedef enum gc_variant { GC_VARIANT_EQUAL = 0, GC_VARIANT_UNEQUAL = 1 } gc_variant;

typedef struct gc_graph gc_graph;
typedef struct gc_params gc_params;
typedef struct gc_detection gc_detection;

typedef struct gc_detect_config {
  size_t q;
  double cap_k;
  gc_clusterer clusterer;
  size_t restarts;
  uint64_t seed;
  unsigned threads;
  gc_ordering ordering;
} gc_detect_config;

typedef struct gc_experiment_config {
  gc_variant variant;
  const int* nu;
  size_t nu_count;
  const double* lambda_tilde;
  size_t lambda_tilde_count;
  size_t n;
  size_t seeds;
  uint64_t base_seed;
  unsigned threads;
  int include_timing;
  gc_detect_config detect; /* q is ignored */
} gc_experiment_config;

GC_API const char* gc_version(void);
GC_API const char* gc_last_error(void);
GC_API const char* gc_status_name(gc_status status);
GC_API void gc_string_free(char* s);

/* Graphs. Vertices are numbered 0..n-1 internally; graphs loaded from files
 * keep the external ids for output. */
GC_API gc_status gc_graph_load(const char* path, gc_graph** out);
GC_API gc_status gc_graph_from_edges(size_t n, const uint32_t* src, const uint32_t* dst,
                                     size_t m, gc_graph** out);
GC_API void gc_graph_free(gc_graph* g);
GC_API size_t gc_graph_num_vertices(const gc_graph* g);
GC_API size_t gc_graph_num_edges(const gc_graph* g);
GC_API void gc_graph_cleanup(const gc_graph* g, size_t* self_loops, size_t* duplicates);
GC_API gc_status gc_graph_write(const gc_graph* g, const char* path);
/* Two columns per line: external id, internal id. */
GC_API gc_status gc_graph_write_id_map(const gc_graph* g, const char* path);
GC_API gc_status gc_graph_giant_size(const gc_graph* g, size_t* out);

/* Ground-truth labels (1-based, 0 = unknown) attached to a graph. */
GC_API gc_status gc_graph_load_labels(gc_graph* g, const char* path);
GC_API gc_status gc_graph_set_labels(gc_graph* g, const uint32_t* labels, size_t n);
GC_API int gc_graph_has_labels(const gc_graph* g);
GC_API gc_status gc_graph_get_labels(const gc_graph* g, uint32_t* out, size_t n);
GC_API gc_status gc_graph_write_labels(const gc_graph* g, const char* path);

/* Block-model parameters: q, pi (length q) and a symmetric kernel (q*q,
 * row-major). Text form is "key = value" lines with keys q, pi, k_matrix. */
GC_API gc_status gc_params_create(size_t q, const double* pi, const double* k, gc_params** out);
GC_API gc_status gc_params_parse(const char* text, gc_params** out);
GC_API gc_status gc_params_load(const char* path, gc_params** out);
GC_API void gc_params_free(gc_params* p);
GC_API gc_status gc_params_lambda(const gc_params* p, double* out);
GC_API gc_status gc_params_describe(const gc_params* p, size_t n, char** out);

/* Sampling. For GC_MODEL_DCBM the degree weights are drawn i.i.d. from the
 * discrete distribution (theta_values, theta_probs) and normalized to mean 1
 * within each block; the other models ignore them. The sampled graph carries
 * its block labels. */
GC_API gc_status gc_generate(gc_model model, const gc_params* p, size_t n, uint64_t seed,
                             const double* theta_values, const double* theta_probs,
                             size_t theta_count, gc_graph** out);

/* Detection. */
GC_API void gc_detect_config_default(gc_detect_config* config);
GC_API gc_status gc_detect(const gc_graph* g, const gc_detect_config* config,
                           gc_detection** out);
GC_API gc_status gc_baseline(const gc_graph* g, const gc_detect_config* config,
                             gc_detection** out);
GC_API void gc_detection_free(gc_detection* d);
GC_API size_t gc_detection_size(const gc_detection* d);
GC_API gc_status gc_detection_labels(const gc_detection* d, uint32_t* out, size_t n);
GC_API gc_status gc_detection_eigenvalues(const gc_detection* d, double* out, size_t k);
/* Scores against the labels attached to g; the rate is over the giant component. */
GC_API gc_status gc_detection_score(gc_detection* d, const gc_graph* g, double* rate);
GC_API const char* gc_detection_report(const gc_detection* d);
GC_API gc_status gc_detection_write_labels(const gc_detection* d, const gc_graph* g,
                                           const char* path);

/* Experiment sweep; *csv_out receives the CSV text (free with gc_string_free). */
GC_API gc_status gc_run_experiment(const gc_experiment_config* config, char** csv_out);

/* Distance profile of a labeled graph against the predictions of p. */
GC_API gc_status gc_profile_distances(const gc_graph* g, const gc_params* p, size_t pairs,
                                      uint64_t seed, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* GEOCOMM_GEOCOMM_H_ */
