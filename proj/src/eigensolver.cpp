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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "geocomm/errors.hpp"
#include "geocomm/linalg.hpp"
#include "geocomm/random.hpp"

namespace geocomm {
namespace {

// Householder reduction of a symmetric matrix to tridiagonal form (after the
// EISPACK tred2 procedure). On return `v` holds the accumulated orthogonal
// transformation, d the diagonal and e the subdiagonal in e[1..n-1].
void tridiagonalize(Matrix& v, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = v.rows();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e). `vt` holds the transposed
// transformation so each plane rotation touches two contiguous rows; pass an
// empty matrix to skip vector updates.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, Matrix& vt) {
  const std::size_t n = d.size();
  const bool vectors = !vt.empty();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  constexpr int kMaxSweeps = 60;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > kMaxSweeps) {
          throw SolverError("tridiagonal QL did not converge", std::abs(e[l]));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (vectors) {
            auto a = vt.row(ii);
            auto b = vt.row(ii + 1);
            for (std::size_t k = 0; k < n; ++k) {
              const double hk = b[k];
              b[k] = s * a[k] + c * hk;
              a[k] = c * a[k] - s * hk;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

void check_square(const Matrix& h) {
  if (h.rows() != h.cols()) throw ArgumentError("eigensolver needs a square matrix");
  if (h.rows() == 0) throw ArgumentError("eigensolver needs a non-empty matrix");
}

}  // namespace

EigenDecomposition symmetric_eig(const Matrix& h) {
  check_square(h);
  const std::size_t n = h.rows();
  Matrix v = h;
  std::vector<double> d, e;
  tridiagonalize(v, d, e);
  Matrix vt = v.transpose();
  tridiagonal_ql(d, e, vt);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    auto src = vt.row(order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = src[i];
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& h) {
  check_square(h);
  Matrix v = h;
  std::vector<double> d, e;
  tridiagonalize(v, d, e);
  Matrix none;
  tridiagonal_ql(d, e, none);
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// Indices of `values` sorted by preference under `ordering`; ties keep the
// original order.
std::vector<std::size_t> preferred_order(const std::vector<double>& values,
                                         EigenOrdering ordering) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (ordering == EigenOrdering::kAbsolute) {
      return std::abs(values[a]) > std::abs(values[b]);
    }
    return values[a] > values[b];
  });
  return idx;
}

// Columns [c0, c0 + count) of `m` as their own matrix.
Matrix take_columns(const Matrix& m, std::size_t c0, std::size_t count) {
  Matrix out(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.row(i);
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(c0),
              src.begin() + static_cast<std::ptrdiff_t>(c0 + count),
              out.row(i).begin());
  }
  return out;
}

void put_columns(Matrix& dst, std::size_t c0, const Matrix& src) {
  for (std::size_t i = 0; i < src.rows(); ++i) {
    auto s = src.row(i);
    std::copy(s.begin(), s.end(), dst.row(i).begin() + static_cast<std::ptrdiff_t>(c0));
  }
}

// w -= V[:, 0:m] (V[:, 0:m]^T w), applied twice (classical Gram-Schmidt with
// reorthogonalization).
void project_out(const Matrix& v, std::size_t m, Matrix& w) {
  const std::size_t n = w.rows();
  const std::size_t p = w.cols();
  if (m == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    Matrix c(m, p);
    for (std::size_t i = 0; i < n; ++i) {
      auto vi = v.row(i);
      auto wi = w.row(i);
      for (std::size_t a = 0; a < m; ++a) {
        const double va = vi[a];
        auto ca = c.row(a);
        for (std::size_t b = 0; b < p; ++b) ca[b] += va * wi[b];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto vi = v.row(i);
      auto wi = w.row(i);
      for (std::size_t a = 0; a < m; ++a) {
        const double va = vi[a];
        auto ca = c.row(a);
        for (std::size_t b = 0; b < p; ++b) wi[b] -= va * ca[b];
      }
    }
  }
}

double column_dot(const Matrix& a, std::size_t ca, const Matrix& b, std::size_t cb) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, ca) * b(i, cb);
  return s;
}

// Orthonormalizes the columns of w in place, each also kept orthogonal to
// V[:, 0:m]. Columns that collapse are replaced by fresh random directions.
void orthonormalize_block(const Matrix& v, std::size_t m, Matrix& w, Rng& rng) {
  const std::size_t n = w.rows();
  for (std::size_t j = 0; j < w.cols(); ++j) {
    for (int attempt = 0;; ++attempt) {
      double before = std::sqrt(column_dot(w, j, w, j));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < j; ++c) {
          double dot = column_dot(w, c, w, j);
          for (std::size_t i = 0; i < n; ++i) w(i, j) -= dot * w(i, c);
        }
      }
      double after = std::sqrt(column_dot(w, j, w, j));
      if (after > 1e-10 * std::max(before, 1e-300) && after > 1e-300) {
        for (std::size_t i = 0; i < n; ++i) w(i, j) /= after;
        break;
      }
      if (attempt > 8) {
        throw SolverError("could not extend the Krylov basis", after);
      }
      Matrix fresh(n, 1);
      for (std::size_t i = 0; i < n; ++i) fresh(i, 0) = uniform01(rng) - 0.5;
      project_out(v, m, fresh);
      for (std::size_t i = 0; i < n; ++i) w(i, j) = fresh(i, 0);
    }
  }
}

}  // namespace

TopEigenResult block_lanczos_topk(const BlockOperator& op, std::size_t n,
                                  std::size_t k, double scale,
                                  const TopEigenOptions& options) {
  if (k == 0 || k > n) {
    throw ArgumentError("requested " + std::to_string(k) +
                        " eigenpairs of an operator of order " + std::to_string(n));
  }
  const std::size_t p = std::min(n, std::max<std::size_t>(k + 8, 2 * k));
  const std::size_t m_max = std::min(n, std::max<std::size_t>(10 * p, 4 * k + 40));
  if (m_max < 3 * p) {
    throw ArgumentError("operator too small for block Lanczos; use the dense path");
  }
  const double target = options.tolerance * std::max(scale, 1e-300);
  Rng rng = make_rng(options.seed, 0xb10c);

  Matrix v(n, m_max), hv(n, m_max), t(m_max, m_max);
  std::size_t m = 0;

  Matrix block(n, p);
  for (double& x : block.data()) x = uniform01(rng) - 0.5;
  orthonormalize_block(v, 0, block, rng);

  double worst = 0.0;
  for (std::size_t step = 1; step <= options.max_restarts * (m_max / p); ++step) {
    // Append the new block and its image.
    put_columns(v, m, block);
    Matrix image(n, p);
    op(block, image);
    put_columns(hv, m, image);
    const std::size_t m_new = m + p;
    for (std::size_t a = 0; a < m_new; ++a) {
      for (std::size_t b = m; b < m_new; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v(i, a) * hv(i, b);
        t(a, b) = s;
        t(b, a) = s;
      }
    }
    m = m_new;

    Matrix tm(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) tm(a, b) = 0.5 * (t(a, b) + t(b, a));
    }
    EigenDecomposition ritz = symmetric_eig(tm);
    auto order = preferred_order(ritz.values, options.ordering);

    // Residuals ||H y - theta y|| of the wanted Ritz pairs.
    worst = 0.0;
    Matrix y(n, k), hy(n, k);
    for (std::size_t i = 0; i < n; ++i) {
      auto vi = v.row(i);
      auto hvi = hv.row(i);
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t col = order[c];
        double sy = 0.0, shy = 0.0;
        for (std::size_t a = 0; a < m; ++a) {
          sy += vi[a] * ritz.vectors(a, col);
          shy += hvi[a] * ritz.vectors(a, col);
        }
        y(i, c) = sy;
        hy(i, c) = shy;
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      const double theta = ritz.values[order[c]];
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double d = hy(i, c) - theta * y(i, c);
        r += d * d;
      }
      worst = std::max(worst, std::sqrt(r));
    }
    if (worst <= target || m == n) {
      TopEigenResult out;
      out.values.resize(k);
      for (std::size_t c = 0; c < k; ++c) out.values[c] = ritz.values[order[c]];
      out.vectors = std::move(y);
      out.iterations = step;
      canonicalize_signs(out.vectors);
      return out;
    }

    std::vector<std::size_t> expand(p);
    if (m + p > m_max) {
      // Thick restart on the best Ritz vectors; their images come for free.
      const std::size_t keep = std::max(p, m_max / 2);
      Matrix s(m, keep);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = 0; c < keep; ++c) s(a, c) = ritz.vectors(a, order[c]);
      }
      Matrix vs = take_columns(v, 0, m) * s;
      Matrix hvs = take_columns(hv, 0, m) * s;
      put_columns(v, 0, vs);
      put_columns(hv, 0, hvs);
      for (std::size_t a = 0; a < keep; ++a) {
        for (std::size_t b = 0; b < keep; ++b) {
          t(a, b) = a == b ? ritz.values[order[a]] : 0.0;
        }
      }
      m = keep;
      std::iota(expand.begin(), expand.end(), 0);
    } else {
      std::iota(expand.begin(), expand.end(), m - p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < p; ++c) block(i, c) = hv(i, expand[c]);
    }
    project_out(v, m, block);
    orthonormalize_block(v, m, block, rng);
    project_out(v, m, block);
    orthonormalize_block(v, m, block, rng);
  }
  throw SolverError("block Lanczos did not converge", worst);
}

TopEigenResult dense_topk(const Matrix& h, std::size_t k,
                          const TopEigenOptions& options) {
  check_square(h);
  const std::size_t n = h.rows();
  if (k == 0 || k > n) {
    throw ArgumentError("requested " + std::to_string(k) +
                        " eigenpairs of a matrix of order " + std::to_string(n));
  }
  const std::size_t p = std::max<std::size_t>(k + 8, 2 * k);
  if (n <= options.dense_threshold || 10 * p > n) {
    EigenDecomposition full = symmetric_eig(h);
    auto order = preferred_order(full.values, options.ordering);
    TopEigenResult out;
    out.values.resize(k);
    out.vectors = Matrix(n, k);
    for (std::size_t c = 0; c < k; ++c) {
      out.values[c] = full.values[order[c]];
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = full.vectors(i, order[c]);
    }
    canonicalize_signs(out.vectors);
    return out;
  }
  BlockOperator op = [&h](const Matrix& in, Matrix& out) {
    const std::size_t cols = in.cols();
    std::fill(out.data().begin(), out.data().end(), 0.0);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      auto hi = h.row(i);
      auto oi = out.row(i);
      for (std::size_t j = 0; j < h.cols(); ++j) {
        const double x = hi[j];
        auto inj = in.row(j);
        for (std::size_t c = 0; c < cols; ++c) oi[c] += x * inj[c];
      }
    }
  };
  return block_lanczos_topk(op, n, k, h.frobenius_norm(), options);
}

}  // namespace geocomm
