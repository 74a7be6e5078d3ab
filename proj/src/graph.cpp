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

#include "geocomm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <numeric>
#include <string>
#include <thread>

#include "geocomm/errors.hpp"

namespace geocomm {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        EdgeCleanup* cleanup) {
  EdgeCleanup tally;
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ArgumentError("edge (" + std::to_string(u) + ", " +
                          std::to_string(v) + ") out of range for n = " +
                          std::to_string(n));
    }
    if (u == v) {
      ++tally.self_loops;
      continue;
    }
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  auto last = std::unique(directed.begin(), directed.end());
  tally.duplicates =
      static_cast<std::size_t>(std::distance(last, directed.end())) / 2;
  directed.erase(last, directed.end());

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : directed) ++g.offsets_[e.first + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.targets_.resize(directed.size());
  // directed is sorted by (u, v), so targets come out grouped and sorted.
  for (std::size_t i = 0; i < directed.size(); ++i) {
    g.targets_[i] = directed[i].second;
  }
  if (cleanup != nullptr) *cleanup = tally;
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  constexpr Vertex kAbsent = ~Vertex{0};
  std::vector<Vertex> local(num_vertices(), kAbsent);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  Graph sub;
  sub.offsets_.assign(vertices.size() + 1, 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    std::size_t before = sub.targets_.size();
    for (Vertex v : neighbors(vertices[i])) {
      if (local[v] != kAbsent) sub.targets_.push_back(local[v]);
    }
    std::sort(sub.targets_.begin() + static_cast<std::ptrdiff_t>(before),
              sub.targets_.end());
    sub.offsets_[i + 1] = sub.targets_.size();
  }
  return sub;
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::uint32_t cap)
    : n_(n), cap_(cap) {
  if (cap == 0 || cap > kMaxCap) {
    throw ArgumentError("distance cap must be in [1, " +
                        std::to_string(kMaxCap) + "], got " +
                        std::to_string(cap));
  }
  if (n != 0 && n > entries_.max_size() / n) {
    throw ResourceError("distance matrix of size " + std::to_string(n) +
                        "^2 exceeds addressable memory");
  }
  try {
    entries_.assign(n * n, static_cast<value_type>(2 * cap));
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate distance matrix for n = " +
                        std::to_string(n));
  }
}

std::uint32_t ComponentLabels::largest() const {
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < sizes.size(); ++c) {
    if (sizes[c] > sizes[best]) best = c;
  }
  return best;
}

std::uint32_t default_cap(std::size_t n, double k) {
  if (!(k > 0.0)) throw ArgumentError("cap multiplier must be positive");
  double raw = std::ceil(k * std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
  raw = std::clamp(raw, 1.0, static_cast<double>(DistanceMatrix::kMaxCap));
  return static_cast<std::uint32_t>(raw);
}

namespace {

// Fills `out` (length n, pre-set to the sentinel) and uses `queue` as scratch.
void bfs_into(const Graph& g, Vertex source, std::uint32_t cap,
              std::span<DistanceMatrix::value_type> out,
              std::vector<Vertex>& queue) {
  const auto sentinel = static_cast<DistanceMatrix::value_type>(2 * cap);
  queue.clear();
  out[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    auto du = out[u];
    if (du >= cap) continue;
    auto next = static_cast<DistanceMatrix::value_type>(du + 1);
    for (Vertex v : g.neighbors(u)) {
      if (out[v] == sentinel) {
        out[v] = next;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

std::vector<DistanceMatrix::value_type> bfs_distances(const Graph& g,
                                                      Vertex source,
                                                      std::uint32_t cap) {
  if (source >= g.num_vertices()) {
    throw ArgumentError("BFS source " + std::to_string(source) +
                        " out of range for n = " +
                        std::to_string(g.num_vertices()));
  }
  if (cap == 0 || cap > DistanceMatrix::kMaxCap) {
    throw ArgumentError("distance cap must be in [1, " +
                        std::to_string(DistanceMatrix::kMaxCap) + "]");
  }
  std::vector<DistanceMatrix::value_type> row(
      g.num_vertices(), static_cast<DistanceMatrix::value_type>(2 * cap));
  std::vector<Vertex> queue;
  bfs_into(g, source, cap, row, queue);
  return row;
}

DistanceMatrix all_pairs_distances(const Graph& g, std::uint32_t cap,
                                   unsigned threads) {
  const std::size_t n = g.num_vertices();
  DistanceMatrix dist(n, cap);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::max<std::size_t>(n, 1))));
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<Vertex> queue;
    queue.reserve(n);
    for (std::size_t s = begin; s < end; ++s) {
      bfs_into(g, static_cast<Vertex>(s), cap, dist.mutable_row(s), queue);
    }
  };
  if (threads == 1) {
    work(0, n);
    return dist;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back(work, n * t / threads, n * (t + 1) / threads);
  }
  workers.clear();
  return dist;
}

ComponentLabels connected_components(const Graph& g) {
  const std::size_t n = g.num_vertices();
  constexpr std::uint32_t kUnseen = ~std::uint32_t{0};
  ComponentLabels out;
  out.labels.assign(n, kUnseen);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (out.labels[s] != kUnseen) continue;
    auto id = static_cast<std::uint32_t>(out.sizes.size());
    std::size_t size = 0;
    out.labels[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex v : g.neighbors(u)) {
        if (out.labels[v] == kUnseen) {
          out.labels[v] = id;
          stack.push_back(v);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

Subgraph giant_component(const Graph& g) {
  if (g.empty()) throw ArgumentError("giant component of an empty graph");
  auto comps = connected_components(g);
  const std::uint32_t giant = comps.largest();
  Subgraph out;
  out.mapping.reserve(comps.sizes[giant]);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (comps.labels[v] == giant) out.mapping.push_back(v);
  }
  out.graph = g.induced(out.mapping);
  return out;
}

DegreeStats degree_stats(const Graph& g,
                         std::optional<std::span<const std::uint32_t>> labels) {
  DegreeStats stats;
  const std::size_t n = g.num_vertices();
  if (n == 0) return stats;
  std::vector<std::size_t> degrees(n);
  double total = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    degrees[v] = g.degree(v);
    total += static_cast<double>(degrees[v]);
  }
  stats.mean = total / static_cast<double>(n);
  std::vector<std::size_t> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  stats.min = sorted.front();
  stats.max = sorted.back();
  stats.median = n % 2 == 1
                     ? static_cast<double>(sorted[n / 2])
                     : 0.5 * static_cast<double>(sorted[n / 2 - 1] + sorted[n / 2]);
  if (labels) {
    if (labels->size() != n) {
      throw ArgumentError("degree_stats: label count does not match n");
    }
    std::uint32_t groups = 0;
    for (auto l : *labels) groups = std::max(groups, l + 1);
    std::vector<double> sums(groups, 0.0);
    std::vector<std::size_t> counts(groups, 0);
    for (Vertex v = 0; v < n; ++v) {
      sums[(*labels)[v]] += static_cast<double>(degrees[v]);
      ++counts[(*labels)[v]];
    }
    stats.group_means.resize(groups, 0.0);
    for (std::uint32_t c = 0; c < groups; ++c) {
      if (counts[c] > 0) stats.group_means[c] = sums[c] / static_cast<double>(counts[c]);
    }
  }
  return stats;
}

}  // namespace geocomm
