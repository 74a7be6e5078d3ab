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

#ifndef GEOCOMM_LINALG_HPP_
#define GEOCOMM_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace geocomm {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  std::vector<double> column(std::size_t j) const;

  double frobenius_norm() const;
  double max_abs() const;
  // Largest |A_ij - A_ji|; requires a square matrix.
  double asymmetry() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

// CSV with one row per line.
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

enum class EigenOrdering {
  kAlgebraic,  // largest values first
  kAbsolute,   // largest magnitudes first
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]
};

// Full decomposition of a symmetric matrix by Householder reduction to
// tridiagonal form followed by implicit-shift QL. Throws SolverError when QL
// fails to converge.
EigenDecomposition symmetric_eig(const Matrix& h);

// Eigenvalues only; same reduction without accumulating transformations.
std::vector<double> symmetric_eigenvalues(const Matrix& h);

// Applies a symmetric operator to a block of vectors: out = H * in, both
// n x p row-major.
using BlockOperator = std::function<void(const Matrix& in, Matrix& out)>;

struct TopEigenOptions {
  EigenOrdering ordering = EigenOrdering::kAlgebraic;
  // Residual target relative to the operator scale.
  double tolerance = 1e-10;
  std::size_t max_restarts = 300;
  std::uint64_t seed = 0x5eed;
  // Matrices of at most this order go straight to the dense solver.
  std::size_t dense_threshold = 400;
};

struct TopEigenResult {
  std::vector<double> values;  // in the requested order
  Matrix vectors;              // n x k, column j pairs with values[j]
  std::size_t iterations = 0;  // block Krylov steps; 0 for the dense path
};

// Restarted block Lanczos with full reorthogonalization for the k wanted
// eigenpairs of an implicit symmetric operator of order n. `scale` is an
// estimate of the operator norm used for the stopping rule.
TopEigenResult block_lanczos_topk(const BlockOperator& op, std::size_t n,
                                  std::size_t k, double scale,
                                  const TopEigenOptions& options = {});

// Top-k eigenpairs of a dense symmetric matrix: dense decomposition for small
// orders, block Lanczos otherwise.
TopEigenResult dense_topk(const Matrix& h, std::size_t k,
                          const TopEigenOptions& options = {});

// Flips each column so its first entry with |x| > 1e-12 is positive.
void canonicalize_signs(Matrix& vectors);

}  // namespace geocomm

#endif  // GEOCOMM_LINALG_HPP_
