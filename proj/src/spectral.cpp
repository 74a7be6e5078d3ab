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

#include "geocomm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "geocomm/errors.hpp"

namespace geocomm {

OperatorSummary operator_summary(const BlockParams& params) {
  params.validate();
  const std::size_t q = params.q;
  OperatorSummary s;
  s.m = Matrix(q, q);
  s.k_tilde = Matrix(q, q);
  Matrix sym(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double kab = params.kernel(a, b);
      s.m(a, b) = kab * params.pi[b];
      s.k_tilde(a, b) = params.pi[a] * kab * params.pi[b];
      sym(a, b) = std::sqrt(params.pi[a]) * kab * std::sqrt(params.pi[b]);
    }
  }
  EigenDecomposition eig = symmetric_eig(sym);
  s.eigenvalues.assign(eig.values.rbegin(), eig.values.rend());
  s.lambda = s.eigenvalues.front();
  s.nu.resize(q);
  double l1 = 0.0;
  for (std::size_t a = 0; a < q; ++a) {
    s.nu[a] = eig.vectors(a, q - 1) / std::sqrt(params.pi[a]);
    l1 += std::abs(s.nu[a]);
  }
  // Perron vector: fix the sign so the entries sum positive.
  double sum = std::accumulate(s.nu.begin(), s.nu.end(), 0.0);
  for (double& x : s.nu) x = (sum < 0 ? -x : x) / l1;
  return s;
}

bool is_irreducible(const BlockParams& params) {
  params.validate();
  const std::size_t q = params.q;
  std::vector<bool> seen(q, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    std::size_t a = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < q; ++b) {
      if (!seen[b] && params.kernel(a, b) > 0.0) {
        seen[b] = true;
        stack.push_back(b);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
}

LimitingKernelMatrix limiting_kernel_matrix(const BlockParams& params) {
  OperatorSummary s = operator_summary(params);
  if (!(s.lambda > 1.0)) {
    std::ostringstream msg;
    msg << "limiting kernel matrix needs lambda > 1, got " << s.lambda;
    throw DomainError(msg.str());
  }
  const std::size_t q = params.q;
  LimitingKernelMatrix out;
  out.d_cal = Matrix(q, q, 1.0 / std::log(s.lambda));
  out.d_tilde.resize(q);
  for (std::size_t a = 0; a < q; ++a) {
    const double growth = params.pi[a] * params.kernel(a, a);
    if (!(growth > 1.0)) {
      std::ostringstream msg;
      msg << "limiting kernel matrix needs pi_a K_aa > 1; block " << a + 1
          << " has " << growth;
      throw DomainError(msg.str());
    }
    out.d_cal(a, a) = 1.0 / std::log(growth);
    out.d_tilde[a] = out.d_cal(a, a);
  }
  return out;
}

Matrix limiting_matrix(std::span<const std::uint32_t> labels,
                       const LimitingKernelMatrix& dcal) {
  const std::size_t n = labels.size();
  const std::size_t q = dcal.d_cal.rows();
  for (auto l : labels) {
    if (l < 1 || l > q) {
      throw ArgumentError("label " + std::to_string(l) + " outside [1, " +
                          std::to_string(q) + "]");
    }
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = i == j ? 0.0 : dcal.d_cal(labels[i] - 1, labels[j] - 1);
    }
  }
  return out;
}

namespace {

// Shared centering of an n x n table of squared entries given by `sq(i, j)`.
template <class Square>
Matrix center_squares(std::size_t n, Square&& sq) {
  if (n == 0) throw ArgumentError("double centering of an empty matrix");
  Matrix out(n, n);
  std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < n; ++j) r[j] = sq(i, j);
  }
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = out.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += r[j];
      col_mean[j] += r[j];
    }
    row_mean[i] = s / static_cast<double>(n);
    grand += s;
  }
  for (double& c : col_mean) c /= static_cast<double>(n);
  grand /= static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      r[j] = -(r[j] - row_mean[i] - col_mean[j] + grand);
    }
  }
  return out;
}

}  // namespace

Matrix double_center(const Matrix& d) {
  if (d.rows() != d.cols()) throw ArgumentError("double centering needs a square matrix");
  return center_squares(d.rows(), [&](std::size_t i, std::size_t j) {
    return d(i, j) * d(i, j);
  });
}

Matrix double_center(const DistanceMatrix& d) {
  return center_squares(d.size(), [&](std::size_t i, std::size_t j) {
    const double x = d(i, j);
    return x * x;
  });
}

SpectralEmbedding symmetric_eig_topk(const Matrix& h, std::size_t k,
                                     EigenOrdering ordering, std::uint64_t seed) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ArgumentError("symmetric_eig_topk needs a non-empty square matrix");
  }
  if (k < 1 || k > h.rows()) {
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(h.rows()) + "]");
  }
  const double tol = 1e-10 * std::max(1.0, h.max_abs());
  if (h.asymmetry() > tol) {
    throw ArgumentError("matrix is not symmetric within 1e-10");
  }
  TopEigenOptions options;
  options.ordering = ordering;
  options.seed = seed;
  TopEigenResult r = dense_topk(h, k, options);
  SpectralEmbedding out;
  out.vectors = std::move(r.vectors);
  out.values = std::move(r.values);
  out.ordering = ordering;
  return out;
}

DavisKahanResult davis_kahan_bound(const Matrix& h, const Matrix& h_prime,
                                   std::size_t d) {
  if (h.rows() != h.cols() || h.rows() != h_prime.rows() ||
      h_prime.rows() != h_prime.cols()) {
    throw ArgumentError("Davis-Kahan inputs must be square and of equal size");
  }
  const std::size_t n = h.rows();
  if (d < 1 || d >= n) {
    throw ArgumentError("subspace dimension must lie in [1, n)");
  }
  EigenDecomposition eh = symmetric_eig(h);
  EigenDecomposition ep = symmetric_eig(h_prime);
  DavisKahanResult r;
  r.delta = eh.values[n - d] - eh.values[n - d - 1];
  if (!(r.delta > 0.0)) {
    throw DomainError("top-d eigengap of H is zero");
  }
  r.perturbation = (h - h_prime).frobenius_norm();
  r.bound = std::sqrt(2.0) * r.perturbation / r.delta;

  // C = W^T W', d x d; its singular values are the principal cosines.
  Matrix c(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += eh.vectors(i, n - 1 - a) * ep.vectors(i, n - 1 - b);
      }
      c(a, b) = s;
    }
  }
  std::vector<double> sv2 = symmetric_eigenvalues(c.transpose() * c);
  double trace = 0.0;
  for (double x : sv2) trace += std::sqrt(std::max(x, 0.0));
  r.achieved = std::sqrt(std::max(0.0, 2.0 * static_cast<double>(d) - 2.0 * trace));
  return r;
}

ConditionReport check_conditions(const BlockParams& params,
                                 std::span<const std::size_t> counts) {
  OperatorSummary s = operator_summary(params);
  const std::size_t q = params.q;
  if (counts.size() != q) {
    throw ArgumentError("check_conditions: expected one count per block");
  }
  ConditionReport r;
  r.lambda = s.lambda;
  r.min_diag_growth = params.pi[0] * params.kernel(0, 0);
  for (std::size_t a = 1; a < q; ++a) {
    r.min_diag_growth = std::min(r.min_diag_growth, params.pi[a] * params.kernel(a, a));
  }
  r.c1 = r.lambda < r.min_diag_growth;

  std::vector<double> row_sum(q, 0.0);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) row_sum[a] += s.k_tilde(a, b);
  }
  const double mean = std::accumulate(row_sum.begin(), row_sum.end(), 0.0) /
                      static_cast<double>(q);
  double spread = 0.0;
  for (double x : row_sum) spread = std::max(spread, std::abs(x - mean));
  r.ones_is_eigenvector = spread <= 1e-12 * std::max(1.0, std::abs(mean));
  r.c1_alternative = !r.ones_is_eigenvector;

  try {
    LimitingKernelMatrix lk = limiting_kernel_matrix(params);
    EigenDecomposition e = symmetric_eig(lk.d_cal);
    r.c2_applicable = true;
    r.d_cal_min_eigenvalue = e.values.front();
    r.c2 = r.d_cal_min_eigenvalue > 0.0;
    const bool all_present =
        std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; });
    if (q > 1 && all_present) {
      // Block-constant eigenvectors of the n x n limiting matrix: with
      // y_a = z_a / sqrt(n_a), z an eigenvector of
      // diag(sqrt n) D_cal diag(sqrt n) - diag(d_tilde).
      Matrix reduced(q, q);
      for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
          reduced(a, b) = std::sqrt(static_cast<double>(counts[a]) *
                                    static_cast<double>(counts[b])) *
                          lk.d_cal(a, b);
        }
        reduced(a, a) -= lk.d_tilde[a];
      }
      EigenDecomposition z = symmetric_eig(reduced);
      r.c3_applicable = true;
      r.min_row_distance = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b) {
          double d2 = 0.0;
          for (std::size_t c = 0; c < q; ++c) {
            const double diff = z.vectors(a, c) / std::sqrt(static_cast<double>(counts[a])) -
                                z.vectors(b, c) / std::sqrt(static_cast<double>(counts[b]));
            d2 += diff * diff;
          }
          r.min_row_distance = std::min(r.min_row_distance, std::sqrt(d2));
        }
      }
      r.c3 = r.min_row_distance > 0.0;
    }
  } catch (const DomainError&) {
    // Subcritical parameters: C2 and C3 are undefined.
  }

  std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total > 0) {
    r.min_share = static_cast<double>(*std::min_element(counts.begin(), counts.end())) /
                  static_cast<double>(total);
  }
  r.c4 = r.min_share > 0.0;
  return r;
}

std::string ConditionReport::describe() const {
  std::ostringstream out;
  out.precision(6);
  auto flag = [](bool applicable, bool ok) {
    return applicable ? (ok ? "holds" : "fails") : "n/a";
  };
  out << "C1 (lambda < min pi_a K_aa): " << flag(true, c1) << "  lambda=" << lambda
      << " min=" << min_diag_growth << '\n';
  out << "C1' (ones not an eigenvector of K_tilde): " << flag(true, c1_alternative)
      << (ones_is_eigenvector ? "  [flag: ones is an eigenvector]" : "") << '\n';
  out << "C2 (lambda_Q(D_cal) > 0): " << flag(c2_applicable, c2)
      << "  value=" << d_cal_min_eigenvalue << '\n';
  out << "C3 (eigen-row separation): " << flag(c3_applicable, c3)
      << "  min=" << min_row_distance << '\n';
  out << "C4 (min block share > 0): " << flag(true, c4) << "  min=" << min_share << '\n';
  return out.str();
}

}  // namespace geocomm
