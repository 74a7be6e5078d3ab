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

#ifndef GEOCOMM_CLUSTERING_HPP_
#define GEOCOMM_CLUSTERING_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "geocomm/linalg.hpp"

namespace geocomm {

// Hard clustering of n rows into q groups, labels 1-based.
struct Assignment {
  std::vector<std::uint32_t> labels;
  Matrix centroids;  // q x d
  double objective = 0.0;
  // Objective after every Lloyd or EM iteration of the selected run.
  std::vector<double> history;
  std::size_t iterations = 0;
  bool converged = false;
};

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iter = 300;
  std::uint64_t seed = 1;
};

// Lloyd iterations from k-means++ seeds; the run with the lowest within-
// cluster sum of squares wins, ties broken by restart index. An emptied
// cluster is re-seeded with the point farthest from its centroid.
Assignment kmeans(const Matrix& rows, std::size_t q, const KMeansOptions& options = {});

struct GmmOptions {
  double tol = 1e-8;  // relative log-likelihood change that ends EM
  std::size_t max_iter = 500;
  std::uint64_t seed = 1;
  std::size_t kmeans_restarts = 10;
};

struct GmmResult {
  Assignment assignment;  // objective is the final log-likelihood
  std::vector<double> weights;
  Matrix means;      // q x d
  Matrix variances;  // q x d, diagonal covariances
  bool variance_floored = false;
  bool converged = false;
};

// EM for a q-component Gaussian mixture with diagonal covariances, started
// from k-means. Variances are floored at 1e-8 times the per-dimension data
// variance (reported via `variance_floored`). Labels take the component with
// the largest responsibility. When EM runs out of iterations the best iterate
// is returned with `converged` false.
GmmResult gmm_em(const Matrix& rows, std::size_t q, const GmmOptions& options = {});

struct MatchResult {
  std::vector<std::uint32_t> permutation;  // permutation[e - 1] = truth label for est label e
  std::size_t mismatches = 0;
  double rate = 0.0;
};

// Best relabeling of `est` onto `truth` (both 1-based, in [1, q]).
// Exhaustive over all q! permutations for q <= 8, Hungarian assignment on the
// confusion matrix above. Throws ArgumentError on a length mismatch or a
// label outside [1, q].
MatchResult match_labels(std::span<const std::uint32_t> est,
                         std::span<const std::uint32_t> truth, std::size_t q);

double misclassification_rate(const MatchResult& match, std::size_t n);

// Minimum-cost perfect matching on a square cost matrix; result[r] is the
// column assigned to row r.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost);

}  // namespace geocomm

#endif  // GEOCOMM_CLUSTERING_HPP_
