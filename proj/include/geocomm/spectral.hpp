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

#ifndef GEOCOMM_SPECTRAL_HPP_
#define GEOCOMM_SPECTRAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "geocomm/generators.hpp"
#include "geocomm/graph.hpp"
#include "geocomm/linalg.hpp"

namespace geocomm {

// Mean-offspring view of block parameters.
//
// The growth rate lambda is the spectral radius of M = K diag(pi) (entries
// M_ab = K_ab pi_b), computed through the similar symmetric matrix
// diag(sqrt pi) K diag(sqrt pi). `nu` is the matching right eigenvector of M,
// scaled to unit l1 norm and positive for irreducible K. `k_tilde` keeps the
// doubly weighted form pi_a K_ab pi_b for reference; it is not used for
// lambda.
struct OperatorSummary {
  Matrix m;
  Matrix k_tilde;
  double lambda = 0.0;
  std::vector<double> nu;
  std::vector<double> eigenvalues;  // all eigenvalues of M, descending
};

OperatorSummary operator_summary(const BlockParams& params);

// True when no proper nonempty subset of blocks is closed under K.
bool is_irreducible(const BlockParams& params);

// Q x Q matrix with 1 / ln(lambda) off the diagonal and 1 / ln(pi_a K_aa) on
// it, plus the diagonal vector d_tilde.
struct LimitingKernelMatrix {
  Matrix d_cal;
  std::vector<double> d_tilde;
};

// Throws DomainError when lambda <= 1 or some pi_a K_aa <= 1.
LimitingKernelMatrix limiting_kernel_matrix(const BlockParams& params);

// n x n matrix with entry (i, j) = d_cal(type i, type j) and zero diagonal.
// Labels are 1-based.
Matrix limiting_matrix(std::span<const std::uint32_t> labels,
                       const LimitingKernelMatrix& dcal);

// -J S J with J = I - 11'/n and S the entrywise square of the input.
Matrix double_center(const Matrix& d);
Matrix double_center(const DistanceMatrix& d);

struct SpectralEmbedding {
  Matrix vectors;  // n x k, orthonormal columns
  std::vector<double> values;
  EigenOrdering ordering = EigenOrdering::kAlgebraic;
};

// Top-k eigenpairs under `ordering`. Each column's first entry above 1e-12 in
// magnitude is positive. Throws ArgumentError for an asymmetric input (beyond
// 1e-10 relative to the largest entry) or k outside [1, n].
SpectralEmbedding symmetric_eig_topk(const Matrix& h, std::size_t k,
                                     EigenOrdering ordering = EigenOrdering::kAlgebraic,
                                     std::uint64_t seed = 0x5eed);

struct DavisKahanResult {
  double bound = 0.0;     // sqrt(2) ||H - H'||_F / delta
  double achieved = 0.0;  // min over orthogonal R of ||W R - W'||_F
  double delta = 0.0;     // gap between the top-d and remaining eigenvalues of H
  double perturbation = 0.0;  // ||H - H'||_F
};

// Subspace of the top-d (algebraic) eigenvalues. The orthogonal R is the
// Procrustes solution, so `achieved` = sqrt(2d - 2 * sum sigma_i(W'W')).
// Throws DomainError when the top-d gap of H is zero.
DavisKahanResult davis_kahan_bound(const Matrix& h, const Matrix& h_prime,
                                   std::size_t d);

// Report on the four separation conditions used by the misclassification
// guarantee. Scalars are reported even when a condition fails; conditions
// that cannot be evaluated are flagged not applicable.
struct ConditionReport {
  // Literal C1: lambda < min_a pi_a K_aa.
  bool c1 = false;
  double lambda = 0.0;
  double min_diag_growth = 0.0;
  // Alternative reading of C1: the all-ones vector is not an eigenvector of
  // K_tilde. `ones_is_eigenvector` is the raised flag.
  bool ones_is_eigenvector = false;
  bool c1_alternative = false;
  // C2: smallest eigenvalue of D_cal positive.
  bool c2_applicable = false;
  bool c2 = false;
  double d_cal_min_eigenvalue = 0.0;
  // C3: block rows of the top-q eigenvectors of the n x n limiting matrix
  // pairwise separated (needs every count positive).
  bool c3_applicable = false;
  bool c3 = false;
  double min_row_distance = 0.0;
  // C4: every block holds a positive share of the vertices.
  bool c4 = false;
  double min_share = 0.0;

  std::string describe() const;
};

ConditionReport check_conditions(const BlockParams& params,
                                 std::span<const std::size_t> counts);

}  // namespace geocomm

#endif  // GEOCOMM_SPECTRAL_HPP_
