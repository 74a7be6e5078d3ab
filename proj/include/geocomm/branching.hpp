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

#ifndef GEOCOMM_BRANCHING_HPP_
#define GEOCOMM_BRANCHING_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "geocomm/generators.hpp"
#include "geocomm/linalg.hpp"

namespace geocomm {

// Multi-type Poisson Galton-Watson tree stored flat. Node 0 is the root;
// types are 1-based and parent is -1 for the root.
struct BranchingTree {
  std::vector<std::uint32_t> type;
  std::vector<std::int64_t> parent;
  std::vector<std::uint32_t> generation;
  std::uint32_t root_type = 1;
  bool truncated = false;

  std::size_t size() const { return type.size(); }
  // One node per line: "id parent type generation".
  std::string dump() const;
};

// A node of type a has Poisson(K_ab pi_b) children of type b for each b.
// Growth stops, with `truncated` set, once a generation would exceed
// `max_generation` or the population would pass `max_population`.
BranchingTree sample_mtbp(const BlockParams& params, std::uint32_t root_type,
                          std::uint32_t max_generation, std::size_t max_population,
                          std::uint64_t seed);

struct SurvivalVector {
  std::vector<double> rho;
  double residual = 0.0;  // max |rho - (1 - exp(-M rho))|
  std::size_t iterations = 0;
};

// Largest fixed point of rho = 1 - exp(-M rho), M_ab = K_ab pi_b, reached by
// iterating from rho = 1. Returns zeros when lambda <= 1. Throws SolverError
// if the residual is still above `tol` after `max_iter` sweeps.
SurvivalVector survival_prob(const BlockParams& params, double tol = 1e-12,
                             std::size_t max_iter = 1000000);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
};

// Fraction of independent trees from `root_type` whose total population
// reaches `population_cutoff`.
McEstimate extinction_prob_mc(const BlockParams& params, std::uint32_t root_type,
                              std::size_t trials, std::size_t population_cutoff,
                              std::uint64_t seed, unsigned threads = 1);

// K'_ab = K_ab (rho_a + rho_b - rho_a rho_b): kernel of the process
// conditioned on survival.
Matrix conditioned_kernel(const BlockParams& params, const SurvivalVector& rho);

struct GenerationCounts {
  // counts[t][a]: nodes of type a + 1 in generation t.
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> totals;
  // totals[t] / lambda^t.
  std::vector<double> normalized;
};

GenerationCounts generation_counts(const BranchingTree& tree, std::size_t q,
                                   double lambda);

}  // namespace geocomm

#endif  // GEOCOMM_BRANCHING_HPP_
