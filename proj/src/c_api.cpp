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

#include "geocomm/geocomm.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geocomm/errors.hpp"
#include "geocomm/generators.hpp"
#include "geocomm/graph.hpp"
#include "geocomm/io.hpp"
#include "geocomm/pipeline.hpp"
#include "geocomm/spectral.hpp"

struct gc_graph {
  geocomm::Graph graph;
  std::vector<std::int64_t> external_ids;  // empty: identity
  geocomm::EdgeCleanup cleanup;
  std::vector<std::uint32_t> labels;  // empty: unknown
};

struct gc_params {
  geocomm::BlockParams params;
};

struct gc_detection {
  geocomm::DetectionResult result;
  std::string report;
};

namespace {

thread_local std::string last_error;

gc_status status_of(geocomm::ErrorKind kind) {
  using geocomm::ErrorKind;
  switch (kind) {
    case ErrorKind::kArgument: return GC_ERR_ARGUMENT;
    case ErrorKind::kValidation: return GC_ERR_VALIDATION;
    case ErrorKind::kParse: return GC_ERR_PARSE;
    case ErrorKind::kDomain: return GC_ERR_DOMAIN;
    case ErrorKind::kSolver: return GC_ERR_SOLVER;
    case ErrorKind::kPipeline: return GC_ERR_PIPELINE;
    case ErrorKind::kResource: return GC_ERR_RESOURCE;
    case ErrorKind::kIo: return GC_ERR_IO;
  }
  return GC_ERR_INTERNAL;
}

gc_status fail(gc_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
gc_status guarded(F&& body) {
  try {
    body();
    return GC_OK;
  } catch (const geocomm::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GC_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(GC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GC_ERR_INTERNAL, "unknown error");
  }
}

#define GC_REQUIRE(cond, what) \
  do {                         \
    if (!(cond)) return fail(GC_ERR_ARGUMENT, what); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

geocomm::PipelineConfig to_pipeline(const gc_detect_config& c) {
  geocomm::PipelineConfig p;
  p.q = c.q;
  p.cap_k = c.cap_k;
  p.clusterer = c.clusterer == GC_CLUSTER_GMM ? geocomm::Clusterer::kGmm
                                              : geocomm::Clusterer::kKMeans;
  p.restarts = c.restarts;
  p.seed = c.seed;
  p.threads = c.threads;
  p.ordering = c.ordering == GC_ORDER_ABSOLUTE ? geocomm::EigenOrdering::kAbsolute
                                               : geocomm::EigenOrdering::kAlgebraic;
  return p;
}

gc_graph* wrap(geocomm::LabeledGraph lg) {
  auto* g = new gc_graph;
  g->graph = std::move(lg.graph);
  g->labels = std::move(lg.labels);
  return g;
}

}  // namespace

extern "C" {

const char* gc_version(void) { return "0.1.0"; }

const char* gc_last_error(void) { return last_error.c_str(); }

const char* gc_status_name(gc_status status) {
  switch (status) {
    case GC_OK: return "ok";
    case GC_ERR_ARGUMENT: return "argument error";
    case GC_ERR_VALIDATION: return "validation error";
    case GC_ERR_PIPELINE: return "pipeline error";
    case GC_ERR_PARSE: return "parse error";
    case GC_ERR_IO: return "i/o error";
    case GC_ERR_DOMAIN: return "domain error";
    case GC_ERR_SOLVER: return "solver error";
    case GC_ERR_RESOURCE: return "resource error";
    case GC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gc_string_free(char* s) { std::free(s); }

gc_status gc_graph_load(const char* path, gc_graph** out) {
  GC_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    geocomm::LoadedGraph lg = geocomm::load_edge_list(path);
    auto* g = new gc_graph;
    g->graph = std::move(lg.graph);
    g->external_ids = std::move(lg.external_ids);
    g->cleanup = lg.cleanup;
    *out = g;
  });
}

gc_status gc_graph_from_edges(size_t n, const uint32_t* src, const uint32_t* dst, size_t m,
                              gc_graph** out) {
  GC_REQUIRE(out && (m == 0 || (src && dst)), "null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<geocomm::Edge> edges(m);
    for (size_t i = 0; i < m; ++i) edges[i] = {src[i], dst[i]};
    auto* g = new gc_graph;
    try {
      g->graph = geocomm::Graph::from_edges(n, edges, &g->cleanup);
    } catch (...) {
      delete g;
      throw;
    }
    *out = g;
  });
}

void gc_graph_free(gc_graph* g) { delete g; }

size_t gc_graph_num_vertices(const gc_graph* g) { return g ? g->graph.num_vertices() : 0; }

size_t gc_graph_num_edges(const gc_graph* g) { return g ? g->graph.num_edges() : 0; }

void gc_graph_cleanup(const gc_graph* g, size_t* self_loops, size_t* duplicates) {
  if (self_loops) *self_loops = g ? g->cleanup.self_loops : 0;
  if (duplicates) *duplicates = g ? g->cleanup.duplicates : 0;
}

gc_status gc_graph_write(const gc_graph* g, const char* path) {
  GC_REQUIRE(g && path, "null argument");
  return guarded([&] { geocomm::write_edge_list(path, g->graph, g->external_ids); });
}

gc_status gc_graph_write_id_map(const gc_graph* g, const char* path) {
  GC_REQUIRE(g && path, "null argument");
  return guarded([&] {
    std::vector<std::int64_t> ids = g->external_ids;
    if (ids.empty()) {
      ids.resize(g->graph.num_vertices());
      for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int64_t>(i);
    }
    geocomm::write_id_map(path, ids);
  });
}

gc_status gc_graph_giant_size(const gc_graph* g, size_t* out) {
  GC_REQUIRE(g && out, "null argument");
  return guarded([&] {
    auto c = geocomm::connected_components(g->graph);
    *out = c.count() == 0 ? 0 : c.sizes[c.largest()];
  });
}

gc_status gc_graph_load_labels(gc_graph* g, const char* path) {
  GC_REQUIRE(g && path, "null argument");
  return guarded([&] {
    auto pairs = geocomm::load_labels(path);
    geocomm::LoadedGraph view;
    view.external_ids = g->external_ids;
    if (view.external_ids.empty()) {
      view.external_ids.resize(g->graph.num_vertices());
      for (size_t i = 0; i < view.external_ids.size(); ++i) {
        view.external_ids[i] = static_cast<std::int64_t>(i);
      }
    }
    g->labels = geocomm::align_labels(view, pairs);
  });
}

gc_status gc_graph_set_labels(gc_graph* g, const uint32_t* labels, size_t n) {
  GC_REQUIRE(g && labels, "null argument");
  if (n != g->graph.num_vertices()) {
    return fail(GC_ERR_ARGUMENT, "label count differs from vertex count");
  }
  return guarded([&] { g->labels.assign(labels, labels + n); });
}

int gc_graph_has_labels(const gc_graph* g) { return g && !g->labels.empty(); }

gc_status gc_graph_get_labels(const gc_graph* g, uint32_t* out, size_t n) {
  GC_REQUIRE(g && out, "null argument");
  if (g->labels.empty()) return fail(GC_ERR_ARGUMENT, "graph carries no labels");
  if (n != g->labels.size()) return fail(GC_ERR_ARGUMENT, "buffer length differs from label count");
  std::copy(g->labels.begin(), g->labels.end(), out);
  return GC_OK;
}

gc_status gc_graph_write_labels(const gc_graph* g, const char* path) {
  GC_REQUIRE(g && path, "null argument");
  if (g->labels.empty()) return fail(GC_ERR_ARGUMENT, "graph carries no labels");
  return guarded([&] { geocomm::write_labels(path, g->labels, g->external_ids); });
}

gc_status gc_params_create(size_t q, const double* pi, const double* k, gc_params** out) {
  GC_REQUIRE(out && pi && k && q > 0, "null argument or q = 0");
  *out = nullptr;
  return guarded([&] {
    geocomm::BlockParams p(std::vector<double>(pi, pi + q), std::vector<double>(k, k + q * q));
    p.validate();
    *out = new gc_params{std::move(p)};
  });
}

gc_status gc_params_parse(const char* text, gc_params** out) {
  GC_REQUIRE(text && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new gc_params{geocomm::BlockParams::from_key_values(text)}; });
}

gc_status gc_params_load(const char* path, gc_params** out) {
  GC_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new gc_params{geocomm::BlockParams::load(path)}; });
}

void gc_params_free(gc_params* p) { delete p; }

gc_status gc_params_lambda(const gc_params* p, double* out) {
  GC_REQUIRE(p && out, "null argument");
  return guarded([&] { *out = geocomm::operator_summary(p->params).lambda; });
}

gc_status gc_params_describe(const gc_params* p, size_t n, char** out) {
  GC_REQUIRE(p && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& bp = p->params;
    auto summary = geocomm::operator_summary(bp);
    std::ostringstream text;
    text.precision(6);
    text << "q: " << bp.q << "\nlambda: " << summary.lambda << "\nnu:";
    for (double x : summary.nu) text << ' ' << x;
    text << "\neigenvalues of M:";
    for (double x : summary.eigenvalues) text << ' ' << x;
    text << "\nirreducible: " << (geocomm::is_irreducible(bp) ? "yes" : "no") << '\n';
    if (n > 0) {
      std::vector<std::size_t> counts(bp.q);
      for (std::size_t a = 0; a < bp.q; ++a) {
        counts[a] = static_cast<std::size_t>(std::llround(bp.pi[a] * static_cast<double>(n)));
      }
      text << geocomm::check_conditions(bp, counts).describe();
    }
    *out = copy_string(text.str());
  });
}

gc_status gc_generate(gc_model model, const gc_params* p, size_t n, uint64_t seed,
                      const double* theta_values, const double* theta_probs,
                      size_t theta_count, gc_graph** out) {
  GC_REQUIRE(p && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    switch (model) {
      case GC_MODEL_SBM:
        *out = wrap(geocomm::sample_sbm(p->params, n, seed));
        return;
      case GC_MODEL_IRGM:
        *out = wrap(geocomm::sample_irgm_finite(p->params, n, seed));
        return;
      case GC_MODEL_DCBM: {
        if (theta_count == 0 || !theta_values || !theta_probs) {
          throw geocomm::ValidationError("degree-corrected model needs a weight distribution");
        }
        geocomm::WeightDistribution w{
            std::vector<double>(theta_values, theta_values + theta_count),
            std::vector<double>(theta_probs, theta_probs + theta_count)};
        *out = wrap(geocomm::sample_dcbm(p->params, w, n, seed));
        return;
      }
    }
    throw geocomm::ArgumentError("unknown model");
  });
}

void gc_detect_config_default(gc_detect_config* config) {
  if (!config) return;
  geocomm::PipelineConfig d;
  config->q = d.q;
  config->cap_k = d.cap_k;
  config->clusterer = GC_CLUSTER_KMEANS;
  config->restarts = d.restarts;
  config->seed = d.seed;
  config->threads = d.threads;
  config->ordering = GC_ORDER_ALGEBRAIC;
}

static gc_status run_detection(const gc_graph* g, const gc_detect_config* config,
                               gc_detection** out, bool baseline) {
  GC_REQUIRE(g && config && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto pc = to_pipeline(*config);
    auto* d = new gc_detection;
    try {
      d->result = baseline ? geocomm::adjacency_spectral_baseline(g->graph, pc)
                           : geocomm::detect_communities(g->graph, pc);
    } catch (...) {
      delete d;
      throw;
    }
    d->report = d->result.report.text();
    *out = d;
  });
}

gc_status gc_detect(const gc_graph* g, const gc_detect_config* config, gc_detection** out) {
  return run_detection(g, config, out, false);
}

gc_status gc_baseline(const gc_graph* g, const gc_detect_config* config, gc_detection** out) {
  return run_detection(g, config, out, true);
}

void gc_detection_free(gc_detection* d) { delete d; }

size_t gc_detection_size(const gc_detection* d) { return d ? d->result.labels.size() : 0; }

gc_status gc_detection_labels(const gc_detection* d, uint32_t* out, size_t n) {
  GC_REQUIRE(d && out, "null argument");
  if (n != d->result.labels.size()) return fail(GC_ERR_ARGUMENT, "buffer length differs from vertex count");
  std::copy(d->result.labels.begin(), d->result.labels.end(), out);
  return GC_OK;
}

gc_status gc_detection_eigenvalues(const gc_detection* d, double* out, size_t k) {
  GC_REQUIRE(d && out, "null argument");
  const auto& ev = d->result.report.eigenvalues;
  if (k != ev.size()) return fail(GC_ERR_ARGUMENT, "buffer length differs from eigenvalue count");
  std::copy(ev.begin(), ev.end(), out);
  return GC_OK;
}

gc_status gc_detection_score(gc_detection* d, const gc_graph* g, double* rate) {
  GC_REQUIRE(d && g && rate, "null argument");
  if (g->labels.empty()) return fail(GC_ERR_ARGUMENT, "graph carries no labels");
  return guarded([&] {
    *rate = geocomm::score_detection(d->result, g->labels);
    d->report = d->result.report.text();
  });
}

const char* gc_detection_report(const gc_detection* d) { return d ? d->report.c_str() : ""; }

gc_status gc_detection_write_labels(const gc_detection* d, const gc_graph* g, const char* path) {
  GC_REQUIRE(d && path, "null argument");
  return guarded([&] {
    std::span<const std::int64_t> ids;
    if (g) {
      if (g->graph.num_vertices() != d->result.labels.size()) {
        throw geocomm::ArgumentError("graph does not match the detection result");
      }
      ids = g->external_ids;
    }
    geocomm::write_labels(path, d->result.labels, ids);
  });
}

gc_status gc_run_experiment(const gc_experiment_config* config, char** csv_out) {
  GC_REQUIRE(config && csv_out, "null argument");
  GC_REQUIRE((config->nu_count == 0 || config->nu) &&
                 (config->lambda_tilde_count == 0 || config->lambda_tilde),
             "null grid");
  *csv_out = nullptr;
  return guarded([&] {
    geocomm::ExperimentConfig ec;
    ec.variant = config->variant == GC_VARIANT_UNEQUAL ? geocomm::DensityVariant::kUnequal
                                                       : geocomm::DensityVariant::kEqual;
    ec.nu.assign(config->nu, config->nu + config->nu_count);
    ec.lambda_tilde.assign(config->lambda_tilde,
                           config->lambda_tilde + config->lambda_tilde_count);
    ec.n = config->n;
    ec.seeds = config->seeds;
    ec.base_seed = config->base_seed;
    ec.threads = config->threads;
    ec.include_timing = config->include_timing != 0;
    ec.pipeline = to_pipeline(config->detect);
    ec.pipeline.q = 3;
    auto rows = geocomm::run_experiment(ec);
    *csv_out = copy_string(geocomm::experiment_csv(rows, ec.include_timing));
  });
}

gc_status gc_profile_distances(const gc_graph* g, const gc_params* p, size_t pairs,
                               uint64_t seed, char** csv_out) {
  GC_REQUIRE(g && p && csv_out, "null argument");
  *csv_out = nullptr;
  if (g->labels.empty()) return fail(GC_ERR_ARGUMENT, "graph carries no labels");
  return guarded([&] {
    geocomm::LabeledGraph lg;
    lg.graph = g->graph;
    lg.labels = g->labels;
    *csv_out = copy_string(geocomm::distance_profile(lg, p->params, pairs, seed).csv());
  });
}

}  // extern "C"
