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
#include <map>

#include "geocomm/errors.hpp"
#include "geocomm/generators.hpp"
#include "geocomm/graph.hpp"
#include "oracles.hpp"

using namespace geocomm;

namespace {

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST(Graph, CleansLoopsAndDuplicates) {
  std::vector<Edge> e = {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {0, 1}};
  EdgeCleanup c;
  Graph g = Graph::from_edges(3, e, &c);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(c.self_loops, 1u);
  EXPECT_EQ(c.duplicates, 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(1, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsOutOfRangeVertex) {
  std::vector<Edge> e = {{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, e), ArgumentError);
}

TEST(Graph, AdjacencyIsSortedAndSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = oracle::random_graph(40, 0.1, seed);
    for (Vertex u = 0; u < 40; ++u) {
      auto nb = g.neighbors(u);
      EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
      EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
      for (Vertex v : nb) {
        EXPECT_NE(u, v);
        EXPECT_TRUE(g.has_edge(v, u));
      }
    }
  }
}

TEST(Bfs, PathGraph) {
  auto row = bfs_distances(path(3), 0, 10);
  EXPECT_EQ(row, (std::vector<DistanceMatrix::value_type>{0, 1, 2}));
}

TEST(Bfs, TruncatesAtCap) {
  auto row = bfs_distances(path(5), 0, 2);
  EXPECT_EQ(row, (std::vector<DistanceMatrix::value_type>{0, 1, 2, 4, 4}));
}

TEST(Bfs, RejectsBadSourceAndCap) {
  EXPECT_THROW(bfs_distances(path(3), 3, 5), ArgumentError);
  EXPECT_THROW(bfs_distances(path(3), 0, 0), ArgumentError);
}

TEST(Bfs, MatchesFloydWarshallRow) {
  Graph g = oracle::random_graph(20, 0.12, 7);
  auto fw = oracle::floyd_warshall(g);
  for (Vertex s = 0; s < 20; ++s) {
    auto row = bfs_distances(g, s, 100);
    for (Vertex v = 0; v < 20; ++v) {
      if (std::isfinite(fw[s][v])) {
        EXPECT_EQ(row[v], fw[s][v]);
      } else {
        EXPECT_EQ(row[v], 200);
      }
    }
  }
}

TEST(AllPairs, Triangle) {
  std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}};
  DistanceMatrix d = all_pairs_distances(Graph::from_edges(3, e), 5);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d(i, j), i == j ? 0 : 1);
}

TEST(AllPairs, DisconnectedPairsGetSentinel) {
  std::vector<Edge> e = {{0, 1}, {2, 3}};
  DistanceMatrix d = all_pairs_distances(Graph::from_edges(4, e), 5);
  EXPECT_EQ(d(0, 1), 1);
  EXPECT_EQ(d(2, 3), 1);
  EXPECT_EQ(d(0, 2), d.sentinel());
  EXPECT_EQ(d(1, 3), 10);
  EXPECT_FALSE(d.is_finite(0, 3));
}

// Floyd-Warshall oracle with distances beyond the cap mapped to the sentinel,
// over random graphs of every density up to n = 64.
TEST(AllPairs, MatchesFloydWarshallProperty) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
    const std::uint32_t cap = 1 + rng() % 8;
    Graph g = oracle::random_graph(n, p, rng());
    auto fw = oracle::floyd_warshall(g);
    DistanceMatrix d = all_pairs_distances(g, cap);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double want = fw[i][j] <= cap ? fw[i][j] : 2.0 * cap;
        ASSERT_EQ(d(i, j), want) << "trial " << trial;
        ASSERT_EQ(d(i, j), d(j, i));
      }
    }
  }
}

TEST(AllPairs, ThreadCountDoesNotChangeResult) {
  Graph g = oracle::random_graph(300, 0.01, 5);
  DistanceMatrix one = all_pairs_distances(g, 9, 1);
  DistanceMatrix four = all_pairs_distances(g, 9, 4);
  for (std::size_t i = 0; i < 300; ++i) {
    auto a = one.row(i), b = four.row(i);
    ASSERT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST(AllPairs, FiniteEntriesObeyTriangleInequality) {
  Graph g = oracle::random_graph(50, 0.06, 3);
  DistanceMatrix d = all_pairs_distances(g, 4);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 50; ++j)
      for (std::size_t k = 0; k < 50; ++k) {
        if (d.is_finite(i, k) && d.is_finite(k, j) && d.is_finite(i, j)) {
          ASSERT_LE(d(i, j), d(i, k) + d(k, j));
        }
      }
}

TEST(DistanceMatrix, RejectsBadCapAndHugeSize) {
  EXPECT_THROW(DistanceMatrix(3, 0), ArgumentError);
  EXPECT_THROW(DistanceMatrix(3, DistanceMatrix::kMaxCap + 1), ArgumentError);
  EXPECT_THROW(DistanceMatrix(std::size_t{1} << 40, 5), ResourceError);
}

TEST(DefaultCap, CeilThreeLogN) {
  EXPECT_EQ(default_cap(2000), static_cast<std::uint32_t>(std::ceil(3 * std::log(2000.0))));
  EXPECT_EQ(default_cap(1000, 2.0), 14u);
  EXPECT_THROW(default_cap(10, 0.0), ArgumentError);
}

TEST(Components, PathAndDisjointEdges) {
  auto c = connected_components(path(3));
  EXPECT_EQ(c.count(), 1u);
  EXPECT_EQ(c.sizes[0], 3u);
  std::vector<Edge> e = {{0, 1}, {2, 3}};
  auto c2 = connected_components(Graph::from_edges(4, e));
  EXPECT_EQ(c2.count(), 2u);
  EXPECT_EQ(c2.sizes, (std::vector<std::size_t>{2, 2}));
}

TEST(Components, AgreeWithUnionFind) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 256;
    Graph g = oracle::random_graph(n, 1.5 / n, rng());
    oracle::UnionFind uf(n);
    for (auto [u, v] : g.edges()) uf.unite(u, v);
    auto c = connected_components(g);
    std::size_t total = 0;
    for (auto s : c.sizes) total += s;
    ASSERT_EQ(total, n);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        ASSERT_EQ(c.labels[i] == c.labels[j], uf.find(i) == uf.find(j));
  }
}

// Cutting single linkage between cap and the sentinel recovers components of
// the graph whose edges are the cap-reachable pairs, i.e. the ordinary
// components.
TEST(Components, SingleLinkageEquivalence) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 63;
    Graph g = oracle::random_graph(n, 1.2 / n, rng());
    const std::uint32_t cap = 1 + rng() % 6;
    DistanceMatrix d = all_pairs_distances(g, cap);
    auto roots = oracle::single_linkage(d, cap + 0.5);
    auto c = connected_components(g);
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        ASSERT_EQ(roots[i] == roots[j], c.labels[i] == c.labels[j]);
  }
}

TEST(Giant, ConnectedGraphIsIdentity) {
  Graph g = path(6);
  Subgraph s = giant_component(g);
  EXPECT_EQ(s.mapping, (std::vector<Vertex>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(s.graph.edges(), g.edges());
}

TEST(Giant, TieGoesToComponentWithSmallestVertex) {
  std::vector<Edge> e = {{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}};
  Subgraph s = giant_component(Graph::from_edges(6, e));
  EXPECT_EQ(s.mapping, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_THROW(giant_component(Graph()), ArgumentError);
}

TEST(Giant, SbmGiantIsConnectedAndLargest) {
  BlockParams p({0.5, 0.5}, {12, 2, 2, 12});
  LabeledGraph lg = sample_sbm(p, 2000, 11);
  Subgraph s = giant_component(lg.graph);
  auto c = connected_components(lg.graph);
  EXPECT_EQ(s.graph.num_vertices(), c.sizes[c.largest()]);
  EXPECT_EQ(connected_components(s.graph).count(), 1u);
  EXPECT_TRUE(std::is_sorted(s.mapping.begin(), s.mapping.end()));
  for (auto [u, v] : s.graph.edges()) EXPECT_TRUE(lg.graph.has_edge(s.mapping[u], s.mapping[v]));
}

TEST(Giant, ErdosRenyiFractionMatchesSurvival) {
  BlockParams p({1.0}, {2.0});
  double mean = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Subgraph s = giant_component(sample_sbm(p, 10000, seed).graph);
    mean += s.graph.num_vertices() / 10000.0 / 3;
  }
  EXPECT_NEAR(mean, oracle::survival_bisection(2.0), 0.02);
}

TEST(DegreeStats, TriangleAndStar) {
  std::vector<Edge> tri = {{0, 1}, {1, 2}, {0, 2}};
  auto t = degree_stats(Graph::from_edges(3, tri));
  EXPECT_EQ(t.min, 2u);
  EXPECT_EQ(t.max, 2u);
  EXPECT_DOUBLE_EQ(t.mean, 2.0);
  std::vector<Edge> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  auto s = degree_stats(Graph::from_edges(5, star));
  EXPECT_EQ(s.max, 4u);
  EXPECT_DOUBLE_EQ(s.median, 1.0);
  EXPECT_DOUBLE_EQ(s.mean, 1.6);
}

TEST(DegreeStats, GroupMeans) {
  std::vector<Edge> star = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  std::vector<std::uint32_t> labels = {1, 2, 2, 2, 2};
  auto s = degree_stats(Graph::from_edges(5, star), std::span<const std::uint32_t>(labels));
  ASSERT_GE(s.group_means.size(), 3u);
  EXPECT_DOUBLE_EQ(s.group_means[1], 4.0);
  EXPECT_DOUBLE_EQ(s.group_means[2], 1.0);
}
