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

#include "geocomm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "geocomm/errors.hpp"
#include "geocomm/random.hpp"

namespace geocomm {
namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Matrix kmeans_pp_seeds(const Matrix& rows, std::size_t q, Rng& rng) {
  const std::size_t n = rows.rows();
  Matrix centers(q, rows.cols());
  std::size_t first = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  first = std::min(first, n - 1);
  std::copy(rows.row(first).begin(), rows.row(first).end(), centers.row(0).begin());
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(rows.row(i), centers.row(0));
  for (std::size_t c = 1; c < q; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      double target = uniform01(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1);
    }
    std::copy(rows.row(pick).begin(), rows.row(pick).end(), centers.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(rows.row(i), centers.row(c)));
    }
  }
  return centers;
}

Assignment lloyd(const Matrix& rows, Matrix centers, std::size_t max_iter) {
  const std::size_t n = rows.rows();
  const std::size_t d = rows.cols();
  const std::size_t q = centers.rows();
  Assignment a;
  std::vector<std::uint32_t> label(n, 0);
  std::vector<double> dist(n, 0.0);

  auto assign = [&]() {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t arg = 0;
      for (std::size_t c = 0; c < q; ++c) {
        const double s = sq_dist(rows.row(i), centers.row(c));
        if (s < best) {
          best = s;
          arg = static_cast<std::uint32_t>(c);
        }
      }
      label[i] = arg;
      dist[i] = best;
      total += best;
    }
    return total;
  };

  double objective = assign();
  for (std::size_t it = 1; it <= max_iter; ++it) {
    // Update step; empty clusters take the point farthest from its centroid.
    Matrix sums(q, d);
    std::vector<std::size_t> counts(q, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto s = sums.row(label[i]);
      auto r = rows.row(i);
      for (std::size_t j = 0; j < d; ++j) s[j] += r[j];
      ++counts[label[i]];
    }
    for (std::size_t c = 0; c < q; ++c) {
      if (counts[c] == 0) {
        std::size_t far = static_cast<std::size_t>(
            std::max_element(dist.begin(), dist.end()) - dist.begin());
        std::copy(rows.row(far).begin(), rows.row(far).end(), centers.row(c).begin());
        // The moved point now sits on its own centroid.
        auto old = sums.row(label[far]);
        for (std::size_t j = 0; j < d; ++j) old[j] -= rows(far, j);
        --counts[label[far]];
        label[far] = static_cast<std::uint32_t>(c);
        dist[far] = 0.0;
        counts[c] = 1;
        std::copy(rows.row(far).begin(), rows.row(far).end(), sums.row(c).begin());
      }
    }
    for (std::size_t c = 0; c < q; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
      }
    }
    std::vector<std::uint32_t> previous = label;
    double next = assign();
    a.history.push_back(next);
    a.iterations = it;
    bool stable = previous == label;
    objective = next;
    if (stable) {
      a.converged = true;
      break;
    }
  }
  a.objective = objective;
  a.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) a.labels[i] = label[i] + 1;
  a.centroids = std::move(centers);
  return a;
}

void check_rows(const Matrix& rows, std::size_t q) {
  if (q < 1) throw ArgumentError("number of clusters must be at least 1");
  if (rows.rows() < q) {
    throw ArgumentError("cannot form " + std::to_string(q) + " clusters from " +
                        std::to_string(rows.rows()) + " rows");
  }
  for (double x : rows.data()) {
    if (!std::isfinite(x)) throw ArgumentError("rows contain non-finite values");
  }
}

}  // namespace

Assignment kmeans(const Matrix& rows, std::size_t q, const KMeansOptions& options) {
  check_rows(rows, q);
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  Assignment best;
  bool have = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    Rng rng = make_rng(options.seed, r);
    Assignment run = lloyd(rows, kmeans_pp_seeds(rows, q, rng), options.max_iter);
    if (!have || run.objective < best.objective) {
      best = std::move(run);
      have = true;
    }
  }
  return best;
}

GmmResult gmm_em(const Matrix& rows, std::size_t q, const GmmOptions& options) {
  check_rows(rows, q);
  const std::size_t n = rows.rows();
  const std::size_t d = rows.cols();
  KMeansOptions km;
  km.seed = options.seed;
  km.restarts = options.kmeans_restarts;
  Assignment init = kmeans(rows, q, km);

  std::vector<double> data_var(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += rows(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) data_var[j] += (rows(i, j) - mean) * (rows(i, j) - mean);
    data_var[j] /= static_cast<double>(n);
  }
  std::vector<double> floor(d);
  for (std::size_t j = 0; j < d; ++j) {
    floor[j] = 1e-8 * (data_var[j] > 0.0 ? data_var[j] : 1.0);
  }

  GmmResult g;
  g.weights.assign(q, 0.0);
  g.means = Matrix(q, d);
  g.variances = Matrix(q, d);
  Matrix resp(n, q);
  for (std::size_t i = 0; i < n; ++i) resp(i, init.labels[i] - 1) = 1.0;

  auto m_step = [&]() {
    for (std::size_t c = 0; c < q; ++c) {
      double nk = 0.0;
      std::vector<double> mu(d, 0.0), var(d, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double r = resp(i, c);
        nk += r;
        for (std::size_t j = 0; j < d; ++j) mu[j] += r * rows(i, j);
      }
      if (nk <= 0.0) {
        // Dead component: park it on the data mean with the data spread.
        nk = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          double m = 0.0;
          for (std::size_t i = 0; i < n; ++i) m += rows(i, j);
          g.means(c, j) = m / static_cast<double>(n);
          g.variances(c, j) = std::max(data_var[j], floor[j]);
        }
        g.weights[c] = 1e-300;
        continue;
      }
      for (std::size_t j = 0; j < d; ++j) mu[j] /= nk;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = resp(i, c);
        for (std::size_t j = 0; j < d; ++j) {
          const double diff = rows(i, j) - mu[j];
          var[j] += r * diff * diff;
        }
      }
      for (std::size_t j = 0; j < d; ++j) {
        g.means(c, j) = mu[j];
        double v = var[j] / nk;
        if (v < floor[j]) {
          v = floor[j];
          g.variance_floored = true;
        }
        g.variances(c, j) = v;
      }
      g.weights[c] = nk / static_cast<double>(n);
    }
  };

  // E step; returns the log-likelihood of the current parameters.
  auto e_step = [&]() {
    constexpr double kLog2Pi = 1.8378770664093453;
    long double loglik = 0.0L;
    std::vector<double> logp(q);
    for (std::size_t i = 0; i < n; ++i) {
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < q; ++c) {
        double lp = std::log(g.weights[c]);
        for (std::size_t j = 0; j < d; ++j) {
          const double v = g.variances(c, j);
          const double diff = rows(i, j) - g.means(c, j);
          lp -= 0.5 * (kLog2Pi + std::log(v) + diff * diff / v);
        }
        logp[c] = lp;
        top = std::max(top, lp);
      }
      double s = 0.0;
      for (std::size_t c = 0; c < q; ++c) s += std::exp(logp[c] - top);
      const double lse = top + std::log(s);
      loglik += lse;
      for (std::size_t c = 0; c < q; ++c) resp(i, c) = std::exp(logp[c] - lse);
    }
    return static_cast<double>(loglik);
  };

  m_step();
  double loglik = e_step();
  g.assignment.history.push_back(loglik);
  double best_loglik = loglik;
  Matrix best_resp = resp;
  std::vector<double> best_w = g.weights;
  Matrix best_mu = g.means, best_var = g.variances;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    m_step();
    const double next = e_step();
    g.assignment.history.push_back(next);
    g.assignment.iterations = it;
    if (next > best_loglik) {
      best_loglik = next;
      best_resp = resp;
      best_w = g.weights;
      best_mu = g.means;
      best_var = g.variances;
    }
    const double change = next - loglik;
    loglik = next;
    if (std::abs(change) <= options.tol * std::max(1.0, std::abs(next))) {
      g.converged = true;
      break;
    }
  }
  g.weights = best_w;
  g.means = best_mu;
  g.variances = best_var;
  g.assignment.objective = best_loglik;
  g.assignment.converged = g.converged;
  g.assignment.centroids = g.means;
  g.assignment.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = best_resp.row(i);
    g.assignment.labels[i] =
        static_cast<std::uint32_t>(std::max_element(r.begin(), r.end()) - r.begin()) + 1;
  }
  return g;
}

std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  // Potentials formulation, 1-based internally.
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> result(n);
  for (std::size_t j = 1; j <= n; ++j) result[p[j] - 1] = j - 1;
  return result;
}

MatchResult match_labels(std::span<const std::uint32_t> est,
                         std::span<const std::uint32_t> truth, std::size_t q) {
  if (est.size() != truth.size()) {
    throw ArgumentError("estimated and true label vectors differ in length");
  }
  if (q < 1) throw ArgumentError("q must be at least 1");
  // confusion[e][t] = #{u : est(u) = e, truth(u) = t}
  std::vector<std::vector<std::size_t>> confusion(q, std::vector<std::size_t>(q, 0));
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est[i] < 1 || est[i] > q || truth[i] < 1 || truth[i] > q) {
      throw ArgumentError("label at position " + std::to_string(i) +
                          " outside [1, " + std::to_string(q) + "]");
    }
    ++confusion[est[i] - 1][truth[i] - 1];
  }
  MatchResult r;
  std::vector<std::size_t> best_perm(q);
  if (q <= 8) {
    std::vector<std::size_t> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best_hits = 0;
    bool first = true;
    do {
      std::size_t hits = 0;
      for (std::size_t e = 0; e < q; ++e) hits += confusion[e][perm[e]];
      if (first || hits > best_hits) {
        best_hits = hits;
        best_perm = perm;
        first = false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<std::vector<double>> cost(q, std::vector<double>(q));
    for (std::size_t e = 0; e < q; ++e) {
      for (std::size_t t = 0; t < q; ++t) cost[e][t] = -static_cast<double>(confusion[e][t]);
    }
    best_perm = hungarian(cost);
  }
  std::size_t hits = 0;
  r.permutation.resize(q);
  for (std::size_t e = 0; e < q; ++e) {
    r.permutation[e] = static_cast<std::uint32_t>(best_perm[e] + 1);
    hits += confusion[e][best_perm[e]];
  }
  r.mismatches = est.size() - hits;
  r.rate = misclassification_rate(r, est.size());
  return r;
}

double misclassification_rate(const MatchResult& match, std::size_t n) {
  if (n == 0) return 0.0;
  return static_cast<double>(match.mismatches) / static_cast<double>(n);
}

}  // namespace geocomm
