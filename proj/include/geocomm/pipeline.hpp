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

#ifndef GEOCOMM_PIPELINE_HPP_
#define GEOCOMM_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geocomm/clustering.hpp"
#include "geocomm/generators.hpp"
#include "geocomm/graph.hpp"
#include "geocomm/linalg.hpp"

namespace geocomm {

enum class Clusterer { kKMeans, kGmm };

struct PipelineConfig {
  std::size_t q = 2;
  double cap_k = 3.0;  // distances truncated at ceil(cap_k * ln n)
  Clusterer clusterer = Clusterer::kKMeans;
  std::size_t restarts = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  EigenOrdering ordering = EigenOrdering::kAlgebraic;

  void validate() const;
};

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

struct RunReport {
  std::size_t n = 0;
  std::size_t giant_size = 0;
  std::size_t giant_edges = 0;
  std::uint32_t cap = 0;
  std::vector<double> eigenvalues;  // of the centered matrix scaled by 1/ln^2 n
  DegreeStats degrees;
  std::vector<StageTiming> stages;
  double total_seconds = 0.0;
  std::string method;
  bool gmm_variance_floored = false;
  bool converged = true;
  std::optional<double> misclassification;
  std::optional<std::size_t> mismatches;
  std::optional<double> lambda;  // set when the graph came from known parameters

  std::string text() const;
};

struct DetectionResult {
  // One label per input vertex; 0 for vertices outside the giant component.
  std::vector<std::uint32_t> labels;
  std::vector<Vertex> giant;  // giant-component vertices in ascending order
  Matrix embedding;           // giant.size() x q
  Assignment assignment;      // labels indexed like `giant`
  RunReport report;
};

// Geodesic spectral clustering: truncated all-pairs distances on the giant
// component, double centering of the squared distances, top-q eigenvectors,
// then k-means or a diagonal Gaussian mixture on their rows.
// Throws PipelineError when the giant component has fewer than q vertices.
DetectionResult detect_communities(const Graph& g, const PipelineConfig& config);

// Comparator: top-q eigenvectors (by magnitude) of the giant component's
// adjacency matrix, clustered with k-means.
DetectionResult adjacency_spectral_baseline(const Graph& g, const PipelineConfig& config);

// Scores `result` against 1-based truth labels on the giant component and
// records the outcome in its report. Returns the rate.
double score_detection(DetectionResult& result, std::span<const std::uint32_t> truth);

struct DistanceBucket {
  std::uint32_t a = 0;  // 1-based types, a <= b
  std::uint32_t b = 0;
  std::size_t pairs = 0;
  std::size_t attempts = 0;
  bool sufficient = false;  // at least 10 connected pairs
  double mean_distance = 0.0;
  double sd_distance = 0.0;
  double mean_over_log_n = 0.0;
  double sd_over_log_n = 0.0;
  // Predicted mean distance under each normalization, NaN when undefined.
  double predicted_lambda = 0.0;      // ln n / ln lambda
  double predicted_diag = 0.0;        // ln n / ln(pi_a K_aa), same type only
  double predicted_diag_local = 0.0;  // ln(n pi_a) / ln(pi_a K_aa), same type only
  std::string best_fit;               // normalization whose ratio is closest to 1
};

struct DistanceProfile {
  std::size_t n = 0;
  double lambda = 0.0;
  std::vector<DistanceBucket> buckets;

  std::string csv() const;
};

// Samples up to `pairs` uniformly random connected vertex pairs for every
// unordered type pair and compares their hop distances with the growth-rate
// predictions of `params`.
DistanceProfile distance_profile(const LabeledGraph& g, const BlockParams& params,
                                 std::size_t pairs, std::uint64_t seed);

struct ExperimentConfig {
  DensityVariant variant = DensityVariant::kEqual;
  std::vector<int> nu;
  std::vector<double> lambda_tilde;
  std::size_t n = 1200;
  std::size_t seeds = 1;
  std::uint64_t base_seed = 1;
  unsigned threads = 1;
  bool include_timing = true;
  PipelineConfig pipeline;  // q is forced to 3

  void validate() const;
};

struct ExperimentRow {
  int nu = 0;
  double lambda_tilde = 0.0;
  std::size_t seed = 0;  // replicate index
  std::string method;    // "geodesic" or "adjacency"
  double rate = 0.0;     // NaN when the cell failed
  double runtime = 0.0;
  std::string error;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);
std::string experiment_csv(std::span<const ExperimentRow> rows, bool include_timing);

// Seed for one grid cell, independent of scheduling order.
std::uint64_t cell_seed(std::uint64_t base, int nu, double lambda_tilde,
                        std::size_t replicate);

}  // namespace geocomm

#endif  // GEOCOMM_PIPELINE_HPP_
