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

#ifndef GEOCOMM_GRAPH_HPP_
#define GEOCOMM_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace geocomm {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Counts of input edges that did not make it into the graph.
struct EdgeCleanup {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

// Immutable undirected simple graph in compressed adjacency form. Neighbor
// lists are sorted, symmetric, free of self-loops and duplicates.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  // Builds from an unordered edge list. Self-loops are dropped and repeated
  // edges (in either orientation) merged; both are tallied in `cleanup`.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          EdgeCleanup* cleanup = nullptr);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }
  bool empty() const { return num_vertices() == 0; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  // Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

// Geodesic hop counts truncated at `cap`; pairs farther apart than cap, or
// disconnected, hold the sentinel 2 * cap.
class DistanceMatrix {
 public:
  using value_type = std::uint16_t;
  static constexpr std::size_t kMaxCap = 16000;

  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, std::uint32_t cap);

  std::size_t size() const { return n_; }
  std::uint32_t cap() const { return cap_; }
  std::uint32_t sentinel() const { return 2 * cap_; }

  value_type operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  std::span<const value_type> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  std::span<value_type> mutable_row(std::size_t i) {
    return {entries_.data() + i * n_, n_};
  }
  bool is_finite(std::size_t i, std::size_t j) const {
    return (*this)(i, j) <= cap_;
  }

 private:
  std::size_t n_ = 0;
  std::uint32_t cap_ = 0;
  std::vector<value_type> entries_;
};

struct ComponentLabels {
  // Component ids are numbered in order of each component's smallest vertex.
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
  // Largest component; ties go to the one with the smallest minimum vertex.
  std::uint32_t largest() const;
};

struct Subgraph {
  Graph graph;
  std::vector<Vertex> mapping;  // original vertex of each subgraph vertex
};

struct DegreeStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  double median = 0.0;
  // Mean degree per group when labels are supplied; index g holds group g.
  std::vector<double> group_means;
};

// Default truncation: ceil(k * ln n), at least 1.
std::uint32_t default_cap(std::size_t n, double k = 3.0);

// Hop counts from `source`, > cap mapped to 2 * cap. Throws ArgumentError for
// an out-of-range source or cap == 0.
std::vector<DistanceMatrix::value_type> bfs_distances(const Graph& g,
                                                      Vertex source,
                                                      std::uint32_t cap);

// One BFS per source, rows split across `threads` workers. Output does not
// depend on the worker count. Throws ResourceError when the n*n table cannot
// be allocated.
DistanceMatrix all_pairs_distances(const Graph& g, std::uint32_t cap,
                                   unsigned threads = 1);

ComponentLabels connected_components(const Graph& g);

// Induced subgraph on the largest connected component.
Subgraph giant_component(const Graph& g);

DegreeStats degree_stats(
    const Graph& g,
    std::optional<std::span<const std::uint32_t>> labels = std::nullopt);

}  // namespace geocomm

#endif  // GEOCOMM_GRAPH_HPP_
