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

#include "geocomm/errors.hpp"
#include "geocomm/generators.hpp"

using namespace geocomm;

namespace {

struct EdgeTally {
  double within = 0, cross = 0, within_pairs = 0, cross_pairs = 0;
};

EdgeTally tally(const LabeledGraph& lg) {
  EdgeTally t;
  for (auto [u, v] : lg.graph.edges()) (lg.labels[u] == lg.labels[v] ? t.within : t.cross) += 1;
  double n1 = lg.block_counts[0], n2 = lg.block_counts[1];
  t.within_pairs = n1 * (n1 - 1) / 2 + n2 * (n2 - 1) / 2;
  t.cross_pairs = n1 * n2;
  return t;
}

bool same_graph(const Graph& a, const Graph& b) {
  return a.num_vertices() == b.num_vertices() && a.edges() == b.edges();
}

}  // namespace

TEST(BlockParams, ValidationNamesTheViolation) {
  EXPECT_NO_THROW(BlockParams({0.5, 0.5}, {1, 2, 2, 1}).validate());
  auto message = [](BlockParams p) {
    try {
      p.validate();
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(BlockParams({0.5, 0.6}, {1, 2, 2, 1})).find("sum"), std::string::npos);
  EXPECT_NE(message(BlockParams({0.5, 0.5}, {1, 2, 3, 1})).find("symmetric"), std::string::npos);
  EXPECT_NE(message(BlockParams({0.5, 0.5}, {1, -2, -2, 1})).find("nonnegative"),
            std::string::npos);
  EXPECT_NE(message(BlockParams({1.0, 0.0}, {1, 2, 2, 1})).find("positive"), std::string::npos);
  EXPECT_THROW(sample_sbm(BlockParams({0.5, 0.6}, {1, 2, 2, 1}), 10, 1), ValidationError);
  EXPECT_THROW(sample_sbm(BlockParams({1.0}, {1.0}), 1, 1), ArgumentError);
}

TEST(Sbm, ZeroKernelGivesEmptyGraph) {
  LabeledGraph lg = sample_sbm(BlockParams({1.0}, {0.0}), 50, 3);
  EXPECT_EQ(lg.graph.num_vertices(), 50u);
  EXPECT_EQ(lg.graph.num_edges(), 0u);
}

TEST(Sbm, ClampedKernelGivesCompleteGraph) {
  LabeledGraph lg = sample_sbm(BlockParams({1.0}, {60.0}), 50, 3);
  EXPECT_EQ(lg.graph.num_edges(), 50u * 49 / 2);
  LabeledGraph two = sample_sbm(BlockParams({0.5, 0.5}, {100, 100, 100, 100}), 40, 5);
  EXPECT_EQ(two.graph.num_edges(), 40u * 39 / 2);
}

// Binomial moment oracle for within- and cross-block edge frequencies.
TEST(Sbm, EdgeFrequenciesMatchKernel) {
  const std::size_t n = 4000;
  LabeledGraph lg = sample_sbm(BlockParams({0.5, 0.5}, {12, 2, 2, 12}), n, 2024);
  EdgeTally t = tally(lg);
  const double pw = 12.0 / n, pc = 2.0 / n;
  EXPECT_NEAR(t.within / t.within_pairs, pw, 3 * std::sqrt(pw * (1 - pw) / t.within_pairs));
  EXPECT_NEAR(t.cross / t.cross_pairs, pc, 3 * std::sqrt(pc * (1 - pc) / t.cross_pairs));
}

TEST(Sbm, DeterministicPerSeed) {
  BlockParams p({0.3, 0.7}, {8, 1, 1, 5});
  LabeledGraph a = sample_sbm(p, 700, 9), b = sample_sbm(p, 700, 9), c = sample_sbm(p, 700, 10);
  EXPECT_TRUE(same_graph(a.graph, b.graph));
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_FALSE(same_graph(a.graph, c.graph));
}

TEST(Sbm, LabelsAndCountsConsistent) {
  BlockParams p({0.2, 0.3, 0.5}, {3, 1, 1, 1, 3, 1, 1, 1, 3});
  LabeledGraph lg = sample_sbm(p, 1000, 4);
  std::vector<std::size_t> counts(3, 0);
  for (auto l : lg.labels) {
    ASSERT_GE(l, 1u);
    ASSERT_LE(l, 3u);
    ++counts[l - 1];
  }
  EXPECT_EQ(counts, lg.block_counts);
}

TEST(Sbm, BlockProportionsObeyLawOfLargeNumbers) {
  BlockParams p({0.2, 0.3, 0.5}, {1, 1, 1, 1, 1, 1, 1, 1, 1});
  const std::size_t n = 2000;
  int within = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LabeledGraph lg = sample_sbm(p, n, seed);
    bool ok = true;
    for (std::size_t a = 0; a < 3; ++a) {
      const double share = static_cast<double>(lg.block_counts[a]) / n;
      ok = ok && std::abs(share - p.pi[a]) < 3 * std::sqrt(p.pi[a] * (1 - p.pi[a]) / n);
    }
    within += ok;
  }
  EXPECT_GE(within, 95);
}

TEST(Sbm, TotalEdgesNearExpectation) {
  BlockParams p({0.5, 0.5}, {16, 4, 4, 16});
  const std::size_t n = 3000;
  LabeledGraph lg = sample_sbm(p, n, 77);
  EdgeTally t = tally(lg);
  const double expect = t.within_pairs * 16.0 / n + t.cross_pairs * 4.0 / n;
  EXPECT_NEAR(lg.graph.num_edges(), expect, 3 * std::sqrt(expect));
}

TEST(Irgm, ConstantKernelMeanDegree) {
  const std::size_t n = 3000;
  auto g = sample_irgm<int>([](int, int) { return 4.0; }, [](Rng&) { return 0; }, n, 5);
  const double mean = 2.0 * g.graph.num_edges() / n;
  // Edge count is Binomial(n(n-1)/2, 4/n).
  const double pairs = n * (n - 1) / 2.0, p = 4.0 / n;
  EXPECT_NEAR(mean, 2 * pairs * p / n, 3 * 2 * std::sqrt(pairs * p * (1 - p)) / n);
}

TEST(Irgm, ZeroKernelAndNegativeKernel) {
  auto g = sample_irgm<int>([](int, int) { return 0.0; }, [](Rng&) { return 0; }, 100, 5);
  EXPECT_EQ(g.graph.num_edges(), 0u);
  auto bad = [] {
    sample_irgm<double>([](double x, double y) { return x + y - 1.0; },
                        [](Rng& r) { return uniform01(r); }, 100, 5);
  };
  EXPECT_THROW(bad(), ValidationError);
}

TEST(Irgm, FiniteTypesMatchSbmEdgeFrequencies) {
  const std::size_t n = 2000;
  LabeledGraph lg = sample_irgm_finite(BlockParams({0.5, 0.5}, {12, 2, 2, 12}), n, 8);
  EdgeTally t = tally(lg);
  const double pw = 12.0 / n, pc = 2.0 / n;
  EXPECT_NEAR(t.within / t.within_pairs, pw, 3 * std::sqrt(pw * (1 - pw) / t.within_pairs));
  EXPECT_NEAR(t.cross / t.cross_pairs, pc, 3 * std::sqrt(pc * (1 - pc) / t.cross_pairs));
}

TEST(Dcbm, UnitWeightsReproduceSbm) {
  BlockParams p({0.5, 0.5}, {16, 4, 4, 16});
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    LabeledGraph sbm = sample_sbm(p, 1500, seed);
    LabeledGraph dc = sample_dcbm(p, std::vector<double>(1500, 1.0), 1500, seed);
    EXPECT_TRUE(same_graph(sbm.graph, dc.graph));
    EXPECT_EQ(sbm.labels, dc.labels);
    LabeledGraph dist = sample_dcbm(p, WeightDistribution{{1.0}, {1.0}}, 1500, seed);
    EXPECT_TRUE(same_graph(sbm.graph, dist.graph));
  }
}

TEST(Dcbm, RejectsNonPositiveWeights) {
  BlockParams p({1.0}, {3.0});
  std::vector<double> theta(10, 1.0);
  theta[4] = 0.0;
  EXPECT_THROW(sample_dcbm(p, theta, 10, 1), ValidationError);
  EXPECT_THROW(sample_dcbm(p, std::vector<double>(9, 1.0), 10, 1), ValidationError);
}

TEST(Dcbm, WeightsNormalizedPerBlock) {
  BlockParams p({0.4, 0.6}, {5, 1, 1, 5});
  DegreeWeights used;
  LabeledGraph lg = sample_dcbm(p, WeightDistribution{{0.5, 1.5}, {0.5, 0.5}}, 1000, 3, &used);
  for (std::uint32_t a = 1; a <= 2; ++a) {
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
      if (lg.labels[i] == a) {
        sum += used.theta[i];
        ++count;
      }
    }
    EXPECT_NEAR(sum / count, 1.0, 1e-9);
  }
}

// Expected degree of i is theta_i * (average kernel), so the two weight
// groups differ by the ratio of their weights.
TEST(Dcbm, TwoPointWeightsGiveThreeToOneDegreeRatio) {
  BlockParams p({0.5, 0.5}, {16, 4, 4, 16});
  DegreeWeights used;
  LabeledGraph lg =
      sample_dcbm(p, WeightDistribution{{0.5, 1.5}, {0.5, 0.5}}, 4000, 12, &used);
  double lo = 0, hi = 0, wlo = 0, whi = 0;
  std::size_t nlo = 0, nhi = 0;
  for (Vertex v = 0; v < 4000; ++v) {
    if (used.theta[v] < 1.0) {
      lo += lg.graph.degree(v);
      wlo += used.theta[v];
      ++nlo;
    } else {
      hi += lg.graph.degree(v);
      whi += used.theta[v];
      ++nhi;
    }
  }
  const double ratio = (hi / nhi) / (lo / nlo);
  const double expected = (whi / nhi) / (wlo / nlo);
  // Delta-method SE of a ratio of Poisson-like means.
  const double se = ratio * std::sqrt(1 / hi + 1 / lo);
  EXPECT_NEAR(ratio, expected, 3 * se);
  EXPECT_NEAR(expected, 3.0, 0.2);
}

TEST(Dcbm, SingleBlockExpectedDegreeIsThetaTimesC) {
  const double c = 6.0;
  const std::size_t n = 1000;
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = i < n / 2 ? 0.5 : 1.5;
  std::vector<double> deg(n, 0.0);
  const int seeds = 40;
  for (int s = 0; s < seeds; ++s) {
    LabeledGraph lg = sample_dcbm(BlockParams({1.0}, {c}), theta, n, 100 + s);
    for (Vertex v = 0; v < n; ++v) deg[v] += lg.graph.degree(v);
  }
  for (Vertex v : {0u, 10u, 700u, 999u}) {
    const double expect = theta[v] * c * (n - 1) / n;
    EXPECT_NEAR(deg[v] / seeds, expect, 3 * std::sqrt(expect / seeds)) << "vertex " << v;
  }
}

TEST(ExperimentDesign, EqualVariantEndpoint) {
  ExperimentDesign d = experiment_design(1, 1.0, DensityVariant::kEqual);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      EXPECT_NEAR(d.f[a * 3 + b], a == b ? 0.01188 : 0.0, 1e-15);
    }
  }
  double rho = 0;
  for (double x : d.f) rho += x / 9;
  EXPECT_NEAR(d.rho_n, rho, 1e-15);
}

TEST(ExperimentDesign, NoSignalAtZero) {
  ExperimentDesign d = experiment_design(7, 0.0, DensityVariant::kUnequal);
  for (double x : d.f) EXPECT_NEAR(x, 0.012 * 1.7 * 0.1, 1e-15);
}

TEST(ExperimentDesign, UnequalVariantDiagonal) {
  ExperimentDesign d = experiment_design(1, 1.0, DensityVariant::kUnequal);
  EXPECT_NEAR(d.f[0], 0.0132 * 0.1, 1e-15);
  EXPECT_NEAR(d.f[4], 0.0132 * 0.5, 1e-15);
  EXPECT_NEAR(d.f[8], 0.0132 * 0.9, 1e-15);
  BlockParams p = d.block_params(1000);
  EXPECT_NEAR(p.kernel(2, 2), 1000 * 0.0132 * 0.9, 1e-9);
  EXPECT_NO_THROW(p.validate());
}

TEST(ExperimentDesign, RejectsOutOfRange) {
  EXPECT_THROW(experiment_design(0, 0.5, DensityVariant::kEqual), ArgumentError);
  EXPECT_THROW(experiment_design(16, 0.5, DensityVariant::kEqual), ArgumentError);
  EXPECT_THROW(experiment_design(3, 1.5, DensityVariant::kEqual), ArgumentError);
}
