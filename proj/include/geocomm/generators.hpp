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

#ifndef GEOCOMM_GENERATORS_HPP_
#define GEOCOMM_GENERATORS_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "geocomm/errors.hpp"
#include "geocomm/graph.hpp"
#include "geocomm/random.hpp"

namespace geocomm {

// Block model parameters: q blocks, membership probabilities pi and a
// symmetric nonnegative kernel K. Pair probabilities are min(K_ab / n, 1).
struct BlockParams {
  std::size_t q = 0;
  std::vector<double> pi;
  std::vector<double> k;  // row-major q x q

  BlockParams() = default;
  BlockParams(std::vector<double> pi_in, std::vector<double> k_in);

  double kernel(std::size_t a, std::size_t b) const { return k[a * q + b]; }

  // Throws ValidationError naming the first violated invariant.
  void validate() const;

  BlockParams scaled(double c) const;

  static BlockParams from_key_values(const std::string& text);
  static BlockParams load(const std::string& path);
  std::string to_key_values() const;
};

// A sampled graph with its planted blocks. Labels are 1-based.
struct LabeledGraph {
  Graph graph;
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> block_counts;
};

// Per-vertex degree multipliers with mean 1 inside every block.
struct DegreeWeights {
  std::vector<double> theta;
};

// Discrete law from which per-vertex multipliers are drawn.
struct WeightDistribution {
  std::vector<double> values;
  std::vector<double> probs;
};

LabeledGraph sample_sbm(const BlockParams& params, std::size_t n,
                        std::uint64_t seed);

// Rescales raw multipliers to mean 1 per block. Throws ValidationError on a
// non-positive entry or a length mismatch.
DegreeWeights normalize_weights(std::vector<double> theta,
                                const std::vector<std::uint32_t>& labels,
                                std::size_t q);

// Degree-corrected draw: pair probability min(theta_i theta_j K / n, 1). The
// multipliers are normalized per block after labels are drawn; with all
// multipliers equal this reproduces sample_sbm for the same seed exactly.
LabeledGraph sample_dcbm(const BlockParams& params,
                         const std::vector<double>& theta, std::size_t n,
                         std::uint64_t seed, DegreeWeights* used = nullptr);
LabeledGraph sample_dcbm(const BlockParams& params,
                         const WeightDistribution& weights, std::size_t n,
                         std::uint64_t seed, DegreeWeights* used = nullptr);

template <class Latent>
struct IrgmGraph {
  Graph graph;
  std::vector<Latent> latent;
};

// Inhomogeneous random graph: x_i drawn i.i.d. by `draw(rng)`, edge {i, j}
// with probability min(kappa(x_i, x_j) / n, 1). O(n^2) pair evaluations.
template <class Latent, class Kernel, class Sampler>
IrgmGraph<Latent> sample_irgm(Kernel&& kappa, Sampler&& draw, std::size_t n,
                              std::uint64_t seed) {
  IrgmGraph<Latent> out;
  Rng latent_rng = make_rng(seed, 0);
  out.latent.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.latent.push_back(draw(latent_rng));
  Rng edge_rng = make_rng(seed, 1);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = kappa(out.latent[i], out.latent[j]);
      if (!(w >= 0.0)) {
        throw ValidationError("kernel is negative or NaN at pair (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      double p = std::min(w * inv_n, 1.0);
      if (uniform01(edge_rng) < p) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

// Finite latent space [q] with law pi and kernel K, through the generic
// pairwise sampler.
LabeledGraph sample_irgm_finite(const BlockParams& params, std::size_t n,
                                std::uint64_t seed);

// Index of a draw from the discrete law `probs` using one uniform.
std::size_t draw_discrete(const std::vector<double>& probs, Rng& rng);

enum class DensityVariant { kEqual, kUnequal };

// Simulation design with three blocks:
//   F = 0.012 (1 + 0.1 nu) (lt * F1 + (1 - lt) * F2),
// F1 = Diag(0.9, 0.9, 0.9) (equal) or Diag(0.1, 0.5, 0.9) (unequal), F2 the
// 3x3 all-0.1 matrix, and rho_n = pi' F pi with pi uniform.
struct ExperimentDesign {
  std::vector<double> f;  // row-major 3 x 3 edge probabilities
  std::vector<double> pi;
  double rho_n = 0.0;

  // Kernel parametrization of the same model for n vertices: K = n F.
  BlockParams block_params(std::size_t n) const;
};

ExperimentDesign experiment_design(int nu, double lambda_tilde,
                                   DensityVariant variant);

}  // namespace geocomm

#endif  // GEOCOMM_GENERATORS_HPP_
