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

// Slow, obviously-correct reference implementations used as test oracles.

#ifndef GEOCOMM_TESTS_ORACLES_HPP_
#define GEOCOMM_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "geocomm/graph.hpp"
#include "geocomm/linalg.hpp"

namespace oracle {

inline geocomm::Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<geocomm::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return geocomm::Graph::from_edges(n, edges);
}

// All-pairs hop distances; unreachable pairs are +inf.
inline std::vector<std::vector<double>> floyd_warshall(const geocomm::Graph& g) {
  const std::size_t n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (auto j : g.neighbors(i)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Single-linkage clusters at threshold t: i ~ j when d(i, j) < t, closed transitively.
inline std::vector<std::size_t> single_linkage(const geocomm::DistanceMatrix& d, double t) {
  UnionFind uf(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d(i, j) < t) uf.unite(i, j);
  std::vector<std::size_t> root(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) root[i] = uf.find(i);
  return root;
}

// Cyclic Jacobi; returns eigenvalues ascending and eigenvectors in columns.
inline std::pair<std::vector<double>, geocomm::Matrix> jacobi_eig(geocomm::Matrix a) {
  const std::size_t n = a.rows();
  geocomm::Matrix v = geocomm::Matrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) < a(y, y); });
  std::vector<double> values(n);
  geocomm::Matrix vectors(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    values[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) vectors(k, c) = v(k, order[c]);
  }
  return {values, vectors};
}

inline geocomm::Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  geocomm::Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = z(rng);
  return h;
}

// Minimum mismatches over all relabelings of est (labels 1..q).
inline std::size_t brute_force_mismatches(const std::vector<std::uint32_t>& est,
                                          const std::vector<std::uint32_t>& truth,
                                          std::size_t q) {
  std::vector<std::uint32_t> perm(q);
  std::iota(perm.begin(), perm.end(), 1u);
  std::size_t best = est.size();
  do {
    std::size_t miss = 0;
    for (std::size_t i = 0; i < est.size(); ++i) miss += perm[est[i] - 1] != truth[i];
    best = std::min(best, miss);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Largest root of rho = 1 - exp(-c rho) by bisection on (0, 1].
inline double survival_bisection(double c) {
  if (c <= 1) return 0;
  double lo = 1e-12, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - (1 - std::exp(-c * mid)) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle

#endif  // GEOCOMM_TESTS_ORACLES_HPP_
