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

#include "geocomm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "geocomm/errors.hpp"
#include "geocomm/random.hpp"
#include "geocomm/spectral.hpp"

namespace geocomm {
namespace {

using Clock = std::chrono::steady_clock;

class StageClock {
 public:
  explicit StageClock(RunReport& report) : report_(report), start_(Clock::now()), last_(start_) {}

  void mark(const char* name) {
    const auto now = Clock::now();
    report_.stages.push_back({name, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

  void finish() {
    report_.total_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  RunReport& report_;
  Clock::time_point start_;
  Clock::time_point last_;
};

Assignment cluster_rows(const Matrix& rows, const PipelineConfig& config, RunReport& report) {
  if (config.clusterer == Clusterer::kGmm) {
    GmmOptions opts;
    opts.seed = config.seed;
    opts.kmeans_restarts = config.restarts;
    GmmResult g = gmm_em(rows, config.q, opts);
    report.gmm_variance_floored = g.variance_floored;
    report.converged = g.converged;
    return std::move(g.assignment);
  }
  KMeansOptions opts;
  opts.seed = config.seed;
  opts.restarts = config.restarts;
  Assignment a = kmeans(rows, config.q, opts);
  report.converged = a.converged;
  return a;
}

DetectionResult prepare(const Graph& g, const PipelineConfig& config, Subgraph& giant) {
  config.validate();
  if (g.empty()) throw ValidationError("graph has no vertices");
  DetectionResult r;
  r.report.n = g.num_vertices();
  r.report.degrees = degree_stats(g);
  giant = giant_component(g);
  r.giant = giant.mapping;
  r.report.giant_size = giant.graph.num_vertices();
  r.report.giant_edges = giant.graph.num_edges();
  if (r.report.giant_size < config.q) {
    throw PipelineError("giant component has " + std::to_string(r.report.giant_size) +
                        " vertices, fewer than q = " + std::to_string(config.q));
  }
  return r;
}

void finish_labels(DetectionResult& r) {
  r.labels.assign(r.report.n, 0);
  for (std::size_t i = 0; i < r.giant.size(); ++i) r.labels[r.giant[i]] = r.assignment.labels[i];
}

}  // namespace

void PipelineConfig::validate() const {
  if (q < 1) throw ValidationError("q must be at least 1");
  if (!(cap_k > 0.0) || !std::isfinite(cap_k)) {
    throw ValidationError("cap multiplier must be positive");
  }
  if (restarts < 1) throw ValidationError("restarts must be at least 1");
  if (threads < 1) throw ValidationError("threads must be at least 1");
}

std::string RunReport::text() const {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "method: " << method << '\n';
  out << "vertices: " << n << '\n';
  out << "giant component: " << giant_size << " vertices, " << giant_edges << " edges\n";
  if (cap > 0) out << "distance cap: " << cap << '\n';
  out << "degree: min " << degrees.min << ", max " << degrees.max << ", mean " << degrees.mean
      << ", median " << degrees.median << '\n';
  if (lambda) out << "lambda: " << *lambda << '\n';
  out << "eigenvalues:";
  for (double v : eigenvalues) out << ' ' << v;
  out << '\n';
  if (!converged) out << "warning: clustering did not converge\n";
  if (gmm_variance_floored) out << "warning: mixture variance floored\n";
  if (misclassification) {
    out << "misclassification: " << *misclassification << " (" << *mismatches
        << " mismatches)\n";
  }
  for (const auto& s : stages) out << "time " << s.name << ": " << s.seconds << " s\n";
  out << "time total: " << total_seconds << " s\n";
  return out.str();
}

DetectionResult detect_communities(const Graph& g, const PipelineConfig& config) {
  RunReport scratch;
  StageClock clock(scratch);
  Subgraph giant;
  DetectionResult r = prepare(g, config, giant);
  r.report.method = "geodesic";
  clock.mark("giant");

  r.report.cap = default_cap(g.num_vertices(), config.cap_k);
  DistanceMatrix d = all_pairs_distances(giant.graph, r.report.cap, config.threads);
  clock.mark("distances");

  Matrix h = double_center(d);
  d = DistanceMatrix();
  const double log_n = std::log(static_cast<double>(std::max<std::size_t>(g.num_vertices(), 2)));
  const double scale = 1.0 / (log_n * log_n);
  for (double& x : h.data()) x *= scale;
  clock.mark("centering");

  SpectralEmbedding emb = symmetric_eig_topk(h, config.q, config.ordering, config.seed);
  h = Matrix();
  r.report.eigenvalues = emb.values;
  r.embedding = std::move(emb.vectors);
  clock.mark("eigen");

  r.assignment = cluster_rows(r.embedding, config, r.report);
  clock.mark("cluster");
  finish_labels(r);
  clock.finish();
  r.report.stages = std::move(scratch.stages);
  r.report.total_seconds = scratch.total_seconds;
  return r;
}

DetectionResult adjacency_spectral_baseline(const Graph& g, const PipelineConfig& config) {
  RunReport scratch;
  StageClock clock(scratch);
  Subgraph giant;
  DetectionResult r = prepare(g, config, giant);
  r.report.method = "adjacency";
  clock.mark("giant");

  const Graph& a = giant.graph;
  const std::size_t m = a.num_vertices();
  TopEigenOptions opts;
  opts.ordering = EigenOrdering::kAbsolute;
  opts.seed = config.seed;
  const std::size_t p = std::max<std::size_t>(config.q + 8, 2 * config.q);
  TopEigenResult top;
  if (m <= opts.dense_threshold || 10 * p > m) {
    Matrix dense(m, m);
    for (Vertex u = 0; u < m; ++u) {
      for (Vertex v : a.neighbors(u)) dense(u, v) = 1.0;
    }
    top = dense_topk(dense, config.q, opts);
  } else {
    BlockOperator op = [&a](const Matrix& in, Matrix& out) {
      const std::size_t cols = in.cols();
      for (Vertex u = 0; u < a.num_vertices(); ++u) {
        auto o = out.row(u);
        std::fill(o.begin(), o.end(), 0.0);
        for (Vertex v : a.neighbors(u)) {
          auto x = in.row(v);
          for (std::size_t c = 0; c < cols; ++c) o[c] += x[c];
        }
      }
    };
    const double fro = std::sqrt(2.0 * static_cast<double>(a.num_edges()));
    top = block_lanczos_topk(op, m, config.q, fro, opts);
  }
  r.report.eigenvalues = top.values;
  r.embedding = std::move(top.vectors);
  clock.mark("eigen");

  PipelineConfig km = config;
  km.clusterer = Clusterer::kKMeans;
  r.assignment = cluster_rows(r.embedding, km, r.report);
  clock.mark("cluster");
  finish_labels(r);
  clock.finish();
  r.report.stages = std::move(scratch.stages);
  r.report.total_seconds = scratch.total_seconds;
  return r;
}

double score_detection(DetectionResult& result, std::span<const std::uint32_t> truth) {
  if (truth.size() != result.labels.size()) {
    throw ArgumentError("truth has " + std::to_string(truth.size()) + " labels for " +
                        std::to_string(result.labels.size()) + " vertices");
  }
  std::vector<std::uint32_t> est, ref;
  std::uint32_t q = static_cast<std::uint32_t>(result.assignment.centroids.rows());
  for (Vertex v : result.giant) {
    if (truth[v] == 0) continue;  // unlabeled vertex
    est.push_back(result.labels[v]);
    ref.push_back(truth[v]);
    q = std::max(q, truth[v]);
  }
  if (est.empty()) throw ArgumentError("no labeled vertex in the giant component");
  MatchResult m = match_labels(est, ref, q);
  result.report.misclassification = m.rate;
  result.report.mismatches = m.mismatches;
  return m.rate;
}

std::string DistanceProfile::csv() const {
  std::ostringstream out;
  out << std::setprecision(8);
  out << "type_a,type_b,pairs,attempts,sufficient,mean_d,sd_d,mean_d_over_ln_n,"
         "sd_d_over_ln_n,pred_lambda,pred_diag,pred_diag_local,ratio_lambda,ratio_diag,"
         "ratio_diag_local,best_fit\n";
  auto ratio = [](double mean, double pred) {
    return std::isfinite(pred) && pred > 0.0 ? mean / pred
                                             : std::numeric_limits<double>::quiet_NaN();
  };
  for (const auto& b : buckets) {
    out << b.a << ',' << b.b << ',' << b.pairs << ',' << b.attempts << ','
        << (b.sufficient ? 1 : 0) << ',' << b.mean_distance << ',' << b.sd_distance << ','
        << b.mean_over_log_n << ',' << b.sd_over_log_n << ',' << b.predicted_lambda << ','
        << b.predicted_diag << ',' << b.predicted_diag_local << ','
        << ratio(b.mean_distance, b.predicted_lambda) << ','
        << ratio(b.mean_distance, b.predicted_diag) << ','
        << ratio(b.mean_distance, b.predicted_diag_local) << ','
        << (b.sufficient ? b.best_fit : "insufficient") << '\n';
  }
  return out.str();
}

DistanceProfile distance_profile(const LabeledGraph& lg, const BlockParams& params,
                                 std::size_t pairs, std::uint64_t seed) {
  params.validate();
  const Graph& g = lg.graph;
  const std::size_t n = g.num_vertices();
  if (lg.labels.size() != n) throw ArgumentError("label count differs from vertex count");
  if (pairs == 0) throw ArgumentError("pair sample size must be positive");
  const std::size_t q = params.q;
  std::vector<std::vector<Vertex>> members(q);
  for (Vertex v = 0; v < n; ++v) {
    if (lg.labels[v] < 1 || lg.labels[v] > q) {
      throw ArgumentError("vertex " + std::to_string(v) + " has a label outside [1, q]");
    }
    members[lg.labels[v] - 1].push_back(v);
  }

  DistanceProfile prof;
  prof.n = n;
  prof.lambda = operator_summary(params).lambda;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double log_n = std::log(static_cast<double>(n));
  const auto cap = static_cast<std::uint32_t>(
      std::min<std::size_t>(std::max<std::size_t>(n, 1), DistanceMatrix::kMaxCap));

  for (std::uint32_t a = 1; a <= q; ++a) {
    for (std::uint32_t b = a; b <= q; ++b) {
      DistanceBucket bucket;
      bucket.a = a;
      bucket.b = b;
      const auto& from = members[a - 1];
      const auto& to = members[b - 1];
      bucket.predicted_lambda = prof.lambda > 1.0 ? log_n / std::log(prof.lambda) : nan;
      bucket.predicted_diag = nan;
      bucket.predicted_diag_local = nan;
      if (a == b) {
        const double growth = params.pi[a - 1] * params.kernel(a - 1, a - 1);
        if (growth > 1.0) {
          bucket.predicted_diag = log_n / std::log(growth);
          bucket.predicted_diag_local =
              std::log(static_cast<double>(n) * params.pi[a - 1]) / std::log(growth);
        }
      }
      std::vector<double> sample;
      if (!from.empty() && !to.empty() && !(a == b && from.size() < 2)) {
        Rng rng = make_rng(seed, (static_cast<std::uint64_t>(a) << 32) | b);
        std::uniform_int_distribution<std::size_t> pick_u(0, from.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_v(0, to.size() - 1);
        const std::size_t max_attempts = 20 * pairs;
        while (sample.size() < pairs && bucket.attempts < max_attempts) {
          ++bucket.attempts;
          const Vertex u = from[pick_u(rng)];
          Vertex v = to[pick_v(rng)];
          if (u == v) continue;
          auto dist = bfs_distances(g, u, cap);
          if (dist[v] <= cap) sample.push_back(dist[v]);
        }
      }
      bucket.pairs = sample.size();
      bucket.sufficient = sample.size() >= 10;
      if (!sample.empty()) {
        double mean = 0.0;
        for (double x : sample) mean += x;
        mean /= static_cast<double>(sample.size());
        double var = 0.0;
        for (double x : sample) var += (x - mean) * (x - mean);
        var = sample.size() > 1 ? var / static_cast<double>(sample.size() - 1) : 0.0;
        bucket.mean_distance = mean;
        bucket.sd_distance = std::sqrt(var);
        bucket.mean_over_log_n = mean / log_n;
        bucket.sd_over_log_n = bucket.sd_distance / log_n;
      }
      double best = std::numeric_limits<double>::infinity();
      const std::pair<const char*, double> fits[] = {
          {"lambda", bucket.predicted_lambda},
          {"diag", bucket.predicted_diag},
          {"diag_local", bucket.predicted_diag_local}};
      for (const auto& [name, pred] : fits) {
        if (!std::isfinite(pred) || pred <= 0.0) continue;
        const double err = std::abs(bucket.mean_distance / pred - 1.0);
        if (err < best) {
          best = err;
          bucket.best_fit = name;
        }
      }
      if (bucket.best_fit.empty()) bucket.best_fit = "none";
      prof.buckets.push_back(bucket);
    }
  }
  return prof;
}

}  // namespace geocomm
