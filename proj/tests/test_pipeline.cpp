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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "geocomm/errors.hpp"
#include "geocomm/pipeline.hpp"
#include "geocomm/spectral.hpp"

using namespace geocomm;

namespace {

// Two K5 cliques, {0..4} and {5..9}, joined by the edge 4-5.
Graph barbell() {
  std::vector<Edge> e;
  for (Vertex base : {0u, 5u})
    for (Vertex i = 0; i < 5; ++i)
      for (Vertex j = i + 1; j < 5; ++j) e.emplace_back(base + i, base + j);
  e.emplace_back(4, 5);
  return Graph::from_edges(10, e);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

PipelineConfig config(std::size_t q, std::uint64_t seed = 1) {
  PipelineConfig c;
  c.q = q;
  c.seed = seed;
  return c;
}

double detect_rate(const LabeledGraph& lg, const PipelineConfig& c, bool baseline) {
  DetectionResult r = baseline ? adjacency_spectral_baseline(lg.graph, c)
                               : detect_communities(lg.graph, c);
  return score_detection(r, lg.labels);
}

void expect_clique_split(const DetectionResult& r) {
  for (Vertex v = 1; v < 5; ++v) EXPECT_EQ(r.labels[v], r.labels[0]);
  for (Vertex v = 6; v < 10; ++v) EXPECT_EQ(r.labels[v], r.labels[5]);
  EXPECT_NE(r.labels[0], r.labels[5]);
}

}  // namespace

TEST(Detect, BarbellBaselineSplitsExactly) {
  expect_clique_split(adjacency_spectral_baseline(barbell(), config(2)));
}

// The leading centered-distance eigenvector separates the cliques by sign.
// The second eigenvalue carries the within-clique contrasts and has
// multiplicity 6, so the second embedding column is an arbitrary unit vector
// of that eigenspace and the two-column k-means split depends on the basis
// the solver returns; only the leading column is pinned down by symmetry.
TEST(Detect, BarbellLeadingEigenvectorSeparatesCliques) {
  for (Clusterer c : {Clusterer::kKMeans, Clusterer::kGmm}) {
    PipelineConfig cfg = config(2);
    cfg.clusterer = c;
    DetectionResult r = detect_communities(barbell(), cfg);
    for (Vertex v = 0; v < 5; ++v) {
      EXPECT_GT(r.embedding(v, 0) * r.embedding(0, 0), 0.0);
      EXPECT_LT(r.embedding(v + 5, 0) * r.embedding(0, 0), 0.0);
    }
    EXPECT_GT(r.report.eigenvalues[0], r.report.eigenvalues[1]);
  }
  DetectionResult one = detect_communities(barbell(), config(1));
  for (auto l : one.labels) EXPECT_EQ(l, 1u);
}

TEST(Detect, BarbellSecondEigenvalueIsDegenerate) {
  DistanceMatrix d = all_pairs_distances(barbell(), default_cap(10));
  std::vector<double> values = symmetric_eigenvalues(double_center(d));
  // Ascending: the top one is the clique split, the next six coincide.
  for (std::size_t k = 3; k < 9; ++k) EXPECT_NEAR(values[k], values[8], 1e-10);
  EXPECT_GT(values[9] - values[8], 1.0);
  EXPECT_GT(values[8] - values[2], 0.1);
}

TEST(Detect, CompleteGraphSingleCluster) {
  DetectionResult r = detect_communities(complete(12), config(1));
  for (auto l : r.labels) EXPECT_EQ(l, 1u);
  EXPECT_EQ(r.report.giant_size, 12u);
}

TEST(Detect, VerticesOutsideGiantAreUnassigned) {
  // Barbell on 0..9, a triangle on 10..12 and an isolated vertex 13.
  std::vector<Edge> e = barbell().edges();
  e.insert(e.end(), {{10, 11}, {11, 12}, {10, 12}});
  Graph g = Graph::from_edges(14, e);
  for (bool baseline : {false, true}) {
    DetectionResult r = baseline ? adjacency_spectral_baseline(g, config(2))
                                 : detect_communities(g, config(2));
    ASSERT_EQ(r.labels.size(), 14u);
    for (Vertex v = 10; v < 14; ++v) EXPECT_EQ(r.labels[v], 0u);
    for (Vertex v = 0; v < 10; ++v) EXPECT_GE(r.labels[v], 1u);
    EXPECT_EQ(r.giant.size(), 10u);
    EXPECT_EQ(r.report.n, 14u);
  }
}

TEST(Detect, NoNonGiantVertexGetsAClusterOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    LabeledGraph lg = sample_sbm(BlockParams({0.5, 0.5}, {3, 1, 1, 3}), 400, seed);
    DetectionResult r = detect_communities(lg.graph, config(2, seed));
    std::set<Vertex> giant(r.giant.begin(), r.giant.end());
    for (Vertex v = 0; v < 400; ++v) {
      if (giant.count(v)) {
        EXPECT_GE(r.labels[v], 1u);
        EXPECT_LE(r.labels[v], 2u);
      } else {
        EXPECT_EQ(r.labels[v], 0u);
      }
    }
  }
}

TEST(Detect, Errors) {
  EXPECT_THROW(detect_communities(Graph(), config(1)), ValidationError);
  // Largest component has 2 vertices.
  std::vector<Edge> e = {{0, 1}, {2, 3}};
  EXPECT_THROW(detect_communities(Graph::from_edges(5, e), config(3)), PipelineError);
  EXPECT_THROW(adjacency_spectral_baseline(Graph::from_edges(5, e), config(3)), PipelineError);
  PipelineConfig bad = config(0);
  EXPECT_THROW(detect_communities(barbell(), bad), ValidationError);
  bad = config(2);
  bad.cap_k = 0;
  EXPECT_THROW(detect_communities(barbell(), bad), ValidationError);
}

TEST(Detect, DeterministicForConfig) {
  LabeledGraph lg = sample_sbm(BlockParams({0.5, 0.5}, {10, 3, 3, 10}), 500, 8);
  for (Clusterer c : {Clusterer::kKMeans, Clusterer::kGmm}) {
    PipelineConfig cfg = config(2, 4);
    cfg.clusterer = c;
    DetectionResult a = detect_communities(lg.graph, cfg);
    cfg.threads = 4;
    DetectionResult b = detect_communities(lg.graph, cfg);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.report.eigenvalues, b.report.eigenvalues);
  }
}

TEST(Detect, StageTimesSumToTotal) {
  LabeledGraph lg = sample_sbm(BlockParams({0.5, 0.5}, {10, 3, 3, 10}), 800, 2);
  DetectionResult r = detect_communities(lg.graph, config(2));
  std::vector<std::string> names;
  double sum = 0;
  for (const auto& s : r.report.stages) {
    names.push_back(s.name);
    sum += s.seconds;
  }
  EXPECT_EQ(names, (std::vector<std::string>{"giant", "distances", "centering", "eigen", "cluster"}));
  EXPECT_NEAR(sum, r.report.total_seconds, 0.05 * r.report.total_seconds);
  EXPECT_EQ(r.report.cap, default_cap(800, 3.0));
  EXPECT_NE(r.report.text().find("giant"), std::string::npos);
}

TEST(Detect, ReferenceSbmIsRecovered) {
  LabeledGraph lg = sample_sbm(BlockParams({0.5, 0.5}, {16, 4, 4, 16}), 2000, 1);
  EXPECT_LE(detect_rate(lg, config(2), false), 0.05);
}

TEST(Score, CountsOnlyLabeledGiantVertices) {
  DetectionResult r = adjacency_spectral_baseline(barbell(), config(2));
  std::vector<std::uint32_t> truth = {1, 1, 1, 1, 2, 2, 2, 2, 2, 0};
  // Vertex 4 is mislabeled in the truth; vertex 9 is unlabeled.
  EXPECT_NEAR(score_detection(r, truth), 1.0 / 9, 1e-15);
  EXPECT_EQ(r.report.mismatches.value(), 1u);
  std::vector<std::uint32_t> short_truth(3, 1);
  EXPECT_THROW(score_detection(r, short_truth), ArgumentError);
}

TEST(Baseline, DenseRegimeMatchesGeodesic) {
  // Mean degree about ln^2 n for n = 1000.
  BlockParams p({0.5, 0.5}, {70, 25, 25, 70});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    LabeledGraph lg = sample_sbm(p, 1000, seed);
    const double geo = detect_rate(lg, config(2, seed), false);
    const double adj = detect_rate(lg, config(2, seed), true);
    EXPECT_NEAR(geo, adj, 0.05) << "seed " << seed;
  }
}

TEST(Baseline, SparseRegimeGeodesicNoWorse) {
  BlockParams p({0.5, 0.5}, {8, 2, 2, 8});
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    LabeledGraph lg = sample_sbm(p, 1000, 50 + seed);
    wins += detect_rate(lg, config(2, seed), false) <= detect_rate(lg, config(2, seed), true);
  }
  EXPECT_GE(wins, 7);
}

TEST(Profile, CompleteGraphDistancesAreOne) {
  const std::size_t n = 60;
  LabeledGraph lg{complete(n), std::vector<std::uint32_t>(n, 1), {n}};
  DistanceProfile p = distance_profile(lg, BlockParams({1.0}, {double(n)}), 200, 3);
  ASSERT_EQ(p.buckets.size(), 1u);
  EXPECT_EQ(p.buckets[0].mean_distance, 1.0);
  EXPECT_EQ(p.buckets[0].sd_distance, 0.0);
  EXPECT_NEAR(p.buckets[0].mean_over_log_n, 1 / std::log(double(n)), 1e-15);
}

TEST(Profile, ErdosRenyiMatchesLogGrowth) {
  BlockParams p({1.0}, {2.0});
  LabeledGraph lg = sample_sbm(p, 4000, 11);
  DistanceProfile prof = distance_profile(lg, p, 1000, 12);
  const auto& b = prof.buckets[0];
  EXPECT_TRUE(b.sufficient);
  const double ratio = b.mean_distance / b.predicted_lambda;
  EXPECT_GE(ratio, 0.85);
  EXPECT_LE(ratio, 1.15);
}

TEST(Profile, TwoTypeCrossBucketMatchesLambda) {
  BlockParams p({0.5, 0.5}, {12, 2, 2, 12});
  LabeledGraph lg = sample_sbm(p, 4000, 13);
  DistanceProfile prof = distance_profile(lg, p, 1000, 14);
  ASSERT_EQ(prof.buckets.size(), 3u);
  for (const auto& b : prof.buckets) {
    EXPECT_TRUE(b.sufficient);
    if (b.a != b.b) {
      const double ratio = b.mean_distance / b.predicted_lambda;
      EXPECT_GE(ratio, 0.85);
      EXPECT_LE(ratio, 1.15);
    } else {
      EXPECT_TRUE(std::isfinite(b.predicted_diag));
      EXPECT_FALSE(b.best_fit.empty());
    }
  }
  EXPECT_NE(prof.csv().find("best_fit"), std::string::npos);
}

TEST(Profile, SparseBucketReportedInsufficient) {
  // Almost no edges: connected pairs are rare.
  BlockParams p({0.5, 0.5}, {0.2, 0.1, 0.1, 0.2});
  LabeledGraph lg = sample_sbm(p, 200, 3);
  DistanceProfile prof = distance_profile(lg, BlockParams({0.5, 0.5}, {2, 1, 1, 2}), 100, 1);
  bool any_insufficient = false;
  for (const auto& b : prof.buckets) any_insufficient |= !b.sufficient;
  EXPECT_TRUE(any_insufficient);
}

namespace {

ExperimentConfig grid(std::vector<int> nu, std::vector<double> lt, std::size_t n,
                      std::size_t seeds) {
  ExperimentConfig c;
  c.nu = std::move(nu);
  c.lambda_tilde = std::move(lt);
  c.n = n;
  c.seeds = seeds;
  c.threads = 4;
  c.include_timing = false;
  return c;
}

}  // namespace

TEST(Experiment, RowCountAndOrder) {
  auto rows = run_experiment(grid({1, 5, 10}, {0.2, 0.5, 0.8}, 300, 2));
  ASSERT_EQ(rows.size(), 3u * 3 * 2 * 2);
  EXPECT_EQ(rows[0].method, "geodesic");
  EXPECT_EQ(rows[1].method, "adjacency");
  EXPECT_EQ(rows[2].seed, 1u);
  EXPECT_EQ(rows.back().nu, 10);
  EXPECT_EQ(rows.back().lambda_tilde, 0.8);
  std::string csv = experiment_csv(rows, false);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 37);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "nu,lambda_tilde,seed,method,rate,runtime,error");
}

TEST(Experiment, CsvIsByteDeterministicAcrossThreadCounts) {
  ExperimentConfig c = grid({3, 12}, {0.4, 0.9}, 300, 2);
  std::string a = experiment_csv(run_experiment(c), false);
  c.threads = 1;
  std::string b = experiment_csv(run_experiment(c), false);
  EXPECT_EQ(a, b);
}

TEST(Experiment, CellSeedsDiffer) {
  EXPECT_NE(cell_seed(1, 1, 0.5, 0), cell_seed(1, 1, 0.5, 1));
  EXPECT_NE(cell_seed(1, 1, 0.5, 0), cell_seed(1, 2, 0.5, 0));
  EXPECT_NE(cell_seed(1, 1, 0.5, 0), cell_seed(2, 1, 0.5, 0));
  EXPECT_EQ(cell_seed(1, 1, 0.0, 0), cell_seed(1, 1, -0.0, 0));
}

TEST(Experiment, NoSignalColumnIsNearRandomGuessing) {
  auto rows = run_experiment(grid({1, 15}, {0.0}, 1200, 2));
  for (const auto& r : rows) {
    ASSERT_TRUE(r.error.empty()) << r.error;
    EXPECT_GE(r.rate, 0.5) << r.method << " nu=" << r.nu;
  }
}

// With lambda_tilde = 1 the off-diagonal probabilities vanish, the three
// blocks are disconnected and the giant component is a single block, so no
// three-way partition of it can be scored against three types.
TEST(Experiment, BlockDiagonalDesignHasSingleBlockGiant) {
  ExperimentDesign d = experiment_design(15, 1.0, DensityVariant::kEqual);
  LabeledGraph lg = sample_sbm(d.block_params(1200), 1200, 5);
  Subgraph giant = giant_component(lg.graph);
  std::set<std::uint32_t> types;
  for (Vertex v : giant.mapping) types.insert(lg.labels[v]);
  EXPECT_EQ(types.size(), 1u);
  EXPECT_LT(giant.graph.num_vertices(), 600u);
}

TEST(Experiment, StrongDiagonalSignalIsRecovered) {
  auto rows = run_experiment(grid({15}, {0.9}, 1200, 2));
  for (const auto& r : rows) {
    if (r.method == "geodesic") {
      EXPECT_LE(r.rate, 0.10);
    }
  }
}

TEST(Experiment, FailedCellIsRecordedInRow) {
  // A design this sparse has a tiny giant component.
  ExperimentConfig c = grid({1}, {0.5}, 12, 1);
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.error.empty());
    EXPECT_TRUE(std::isnan(r.rate));
  }
  EXPECT_NE(experiment_csv(rows, false).find("giant"), std::string::npos);
}

TEST(Experiment, ValidatesGrids) {
  EXPECT_THROW(run_experiment(grid({}, {0.5}, 300, 1)), ValidationError);
  EXPECT_THROW(run_experiment(grid({1}, {}, 300, 1)), ValidationError);
  EXPECT_THROW(run_experiment(grid({0}, {0.5}, 300, 1)), ValidationError);
  EXPECT_THROW(run_experiment(grid({1}, {1.5}, 300, 1)), ValidationError);
}
