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

#include "geocomm/generators.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "geocomm/io.hpp"

namespace geocomm {

BlockParams::BlockParams(std::vector<double> pi_in, std::vector<double> k_in)
    : q(pi_in.size()), pi(std::move(pi_in)), k(std::move(k_in)) {}

void BlockParams::validate() const {
  if (q == 0) throw ValidationError("q must be at least 1");
  if (pi.size() != q) {
    throw ValidationError("pi has " + std::to_string(pi.size()) +
                          " entries, expected q = " + std::to_string(q));
  }
  if (k.size() != q * q) {
    throw ValidationError("k_matrix has " + std::to_string(k.size()) +
                          " entries, expected q*q = " + std::to_string(q * q));
  }
  double total = 0.0;
  for (std::size_t a = 0; a < q; ++a) {
    if (!(pi[a] > 0.0)) {
      throw ValidationError("pi[" + std::to_string(a) + "] must be positive");
    }
    total += pi[a];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pi must sum to 1 (+-1e-12), sums to " << total;
    throw ValidationError(msg.str());
  }
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      if (!(kernel(a, b) >= 0.0) || !std::isfinite(kernel(a, b))) {
        throw ValidationError("k_matrix entry (" + std::to_string(a) + ", " +
                              std::to_string(b) +
                              ") must be finite and nonnegative");
      }
      if (kernel(a, b) != kernel(b, a)) {
        throw ValidationError("k_matrix must be symmetric; (" +
                              std::to_string(a) + ", " + std::to_string(b) +
                              ") differs from its transpose");
      }
    }
  }
}

BlockParams BlockParams::scaled(double c) const {
  BlockParams out = *this;
  for (double& x : out.k) x *= c;
  return out;
}

BlockParams BlockParams::from_key_values(const std::string& text) {
  auto kv = parse_key_values(text);
  for (const char* key : {"q", "pi", "k_matrix"}) {
    if (!kv.count(key)) {
      throw ValidationError(std::string("block parameters: missing key '") +
                            key + "'");
    }
  }
  auto q_list = parse_number_list(kv["q"], "q");
  if (q_list.size() != 1 || q_list[0] < 1 || q_list[0] != std::floor(q_list[0])) {
    throw ValidationError("key 'q' must be a positive integer");
  }
  BlockParams p(parse_number_list(kv["pi"], "pi"),
                parse_number_list(kv["k_matrix"], "k_matrix"));
  p.q = static_cast<std::size_t>(q_list[0]);
  p.validate();
  return p;
}

BlockParams BlockParams::load(const std::string& path) {
  return from_key_values(read_file(path));
}

std::string BlockParams::to_key_values() const {
  std::ostringstream out;
  out.precision(17);
  out << "q = " << q << "\npi =";
  for (double x : pi) out << ' ' << x;
  out << "\nk_matrix =";
  for (double x : k) out << ' ' << x;
  out << '\n';
  return out.str();
}

std::size_t draw_discrete(const std::vector<double>& probs, Rng& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a + 1 < probs.size(); ++a) {
    acc += probs[a];
    if (u < acc) return a;
  }
  return probs.size() - 1;
}

namespace {

// Stream ids: 0 labels, 1 weights, 2 + (a*q + b) for the block pair (a, b).
constexpr std::uint64_t kLabelStream = 0;
constexpr std::uint64_t kWeightStream = 1;
std::uint64_t pair_stream(std::size_t a, std::size_t b, std::size_t q) {
  return 2 + static_cast<std::uint64_t>(a * q + b);
}

// Number of failures before the next success of a Bernoulli(p) sequence.
std::uint64_t geometric_gap(double log1m_p, Rng& rng) {
  double u = uniform01(rng);
  double g = std::floor(std::log1p(-u) / log1m_p);
  constexpr double kHuge = 4.0e18;
  return g >= kHuge ? static_cast<std::uint64_t>(kHuge) : static_cast<std::uint64_t>(g);
}

// Visits the Bernoulli(p) successes among the pairs of a block pair in
// O(successes) time. Within a block (same == true) pairs are i < j over
// `rows`; across blocks every (rows[i], cols[j]).
template <class Visit>
void for_each_success(const std::vector<Vertex>& rows,
                      const std::vector<Vertex>& cols, bool same, double p,
                      Rng& rng, Visit&& visit) {
  if (p <= 0.0 || rows.empty() || cols.empty()) return;
  const std::size_t m = rows.size();
  auto row_len = [&](std::size_t r) -> std::uint64_t {
    return same ? m - 1 - r : cols.size();
  };
  const std::size_t last_row = same ? m - 1 : m;  // exclusive
  const bool all = p >= 1.0;
  const double log1m_p = all ? 0.0 : std::log1p(-p);
  std::size_t r = 0;
  std::uint64_t off = 0;
  bool first = true;
  while (r < last_row) {
    std::uint64_t step = (first ? 0 : 1) + (all ? 0 : geometric_gap(log1m_p, rng));
    first = false;
    off += step;
    while (r < last_row && off >= row_len(r)) {
      off -= row_len(r);
      ++r;
    }
    if (r >= last_row) break;
    Vertex u = rows[r];
    Vertex v = same ? rows[r + 1 + off] : cols[off];
    visit(u, v);
  }
}

struct Blocks {
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> counts;
  std::vector<std::vector<Vertex>> members;
};

Blocks draw_blocks(const BlockParams& params, std::size_t n, std::uint64_t seed) {
  Blocks b;
  Rng rng = make_rng(seed, kLabelStream);
  b.labels.resize(n);
  b.counts.assign(params.q, 0);
  b.members.resize(params.q);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t a = draw_discrete(params.pi, rng);
    b.labels[i] = static_cast<std::uint32_t>(a + 1);
    ++b.counts[a];
    b.members[a].push_back(static_cast<Vertex>(i));
  }
  return b;
}

// Shared body of the SBM and DCBM samplers. `theta` empty means all ones.
LabeledGraph sample_blocks(const BlockParams& params, const Blocks& blocks,
                           std::size_t n, std::uint64_t seed,
                           const std::vector<double>& theta) {
  const std::size_t q = params.q;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> theta_max(q, 1.0);
  if (!theta.empty()) {
    for (std::size_t a = 0; a < q; ++a) {
      double mx = 0.0;
      for (Vertex v : blocks.members[a]) mx = std::max(mx, theta[v]);
      theta_max[a] = mx;
    }
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a; b < q; ++b) {
      Rng rng = make_rng(seed, pair_stream(a, b, q));
      const double base = params.kernel(a, b) * inv_n;
      const double p_max = std::min(base * theta_max[a] * theta_max[b], 1.0);
      for_each_success(
          blocks.members[a], blocks.members[b], a == b, p_max, rng,
          [&](Vertex u, Vertex v) {
            if (!theta.empty()) {
              double p = std::min(base * theta[u] * theta[v], 1.0);
              if (p < p_max && uniform01(rng) * p_max >= p) return;
            }
            edges.emplace_back(u, v);
          });
    }
  }
  LabeledGraph out;
  out.graph = Graph::from_edges(n, edges);
  out.labels = blocks.labels;
  out.block_counts = blocks.counts;
  return out;
}

void check_n(std::size_t n) {
  if (n < 2) throw ArgumentError("graph size n must be at least 2");
  if (n > std::numeric_limits<Vertex>::max()) {
    throw ArgumentError("graph size n exceeds the vertex id range");
  }
}

}  // namespace

LabeledGraph sample_sbm(const BlockParams& params, std::size_t n,
                        std::uint64_t seed) {
  params.validate();
  check_n(n);
  return sample_blocks(params, draw_blocks(params, n, seed), n, seed, {});
}

DegreeWeights normalize_weights(std::vector<double> theta,
                                const std::vector<std::uint32_t>& labels,
                                std::size_t q) {
  if (theta.size() != labels.size()) {
    throw ValidationError("degree weights: expected " +
                          std::to_string(labels.size()) + " entries, got " +
                          std::to_string(theta.size()));
  }
  std::vector<double> sum(q, 0.0);
  std::vector<std::size_t> count(q, 0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0) || !std::isfinite(theta[i])) {
      throw ValidationError("degree weight theta[" + std::to_string(i) +
                            "] must be positive and finite");
    }
    sum[labels[i] - 1] += theta[i];
    ++count[labels[i] - 1];
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    std::size_t a = labels[i] - 1;
    theta[i] *= static_cast<double>(count[a]) / sum[a];
  }
  return DegreeWeights{std::move(theta)};
}

LabeledGraph sample_dcbm(const BlockParams& params,
                         const std::vector<double>& theta, std::size_t n,
                         std::uint64_t seed, DegreeWeights* used) {
  params.validate();
  check_n(n);
  Blocks blocks = draw_blocks(params, n, seed);
  DegreeWeights w = normalize_weights(theta, blocks.labels, params.q);
  auto out = sample_blocks(params, blocks, n, seed, w.theta);
  if (used != nullptr) *used = std::move(w);
  return out;
}

LabeledGraph sample_dcbm(const BlockParams& params,
                         const WeightDistribution& weights, std::size_t n,
                         std::uint64_t seed, DegreeWeights* used) {
  params.validate();
  check_n(n);
  if (weights.values.empty() || weights.values.size() != weights.probs.size()) {
    throw ValidationError("weight distribution needs matching values and probs");
  }
  double total = std::accumulate(weights.probs.begin(), weights.probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("weight distribution probabilities must sum to 1");
  }
  Blocks blocks = draw_blocks(params, n, seed);
  Rng rng = make_rng(seed, kWeightStream);
  std::vector<double> theta(n);
  for (auto& t : theta) t = weights.values[draw_discrete(weights.probs, rng)];
  DegreeWeights w = normalize_weights(std::move(theta), blocks.labels, params.q);
  auto out = sample_blocks(params, blocks, n, seed, w.theta);
  if (used != nullptr) *used = std::move(w);
  return out;
}

LabeledGraph sample_irgm_finite(const BlockParams& params, std::size_t n,
                                std::uint64_t seed) {
  params.validate();
  check_n(n);
  auto irgm = sample_irgm<std::uint32_t>(
      [&](std::uint32_t a, std::uint32_t b) { return params.kernel(a, b); },
      [&](Rng& rng) { return static_cast<std::uint32_t>(draw_discrete(params.pi, rng)); },
      n, seed);
  LabeledGraph out;
  out.graph = std::move(irgm.graph);
  out.block_counts.assign(params.q, 0);
  out.labels.reserve(n);
  for (auto a : irgm.latent) {
    out.labels.push_back(a + 1);
    ++out.block_counts[a];
  }
  return out;
}

BlockParams ExperimentDesign::block_params(std::size_t n) const {
  BlockParams p(pi, f);
  for (double& x : p.k) x *= static_cast<double>(n);
  return p;
}

ExperimentDesign experiment_design(int nu, double lambda_tilde,
                                   DensityVariant variant) {
  if (nu < 1 || nu > 15) {
    throw ArgumentError("nu must lie in [1, 15], got " + std::to_string(nu));
  }
  if (!(lambda_tilde >= 0.0 && lambda_tilde <= 1.0)) {
    throw ArgumentError("lambda_tilde must lie in [0, 1]");
  }
  const double diag_equal[3] = {0.9, 0.9, 0.9};
  const double diag_unequal[3] = {0.1, 0.5, 0.9};
  const double* diag = variant == DensityVariant::kEqual ? diag_equal : diag_unequal;
  const double scale = 0.012 * (1.0 + 0.1 * nu);
  ExperimentDesign d;
  d.pi.assign(3, 1.0 / 3.0);
  d.f.assign(9, 0.0);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      double f1 = a == b ? diag[a] : 0.0;
      d.f[a * 3 + b] = scale * (lambda_tilde * f1 + (1.0 - lambda_tilde) * 0.1);
    }
  }
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) d.rho_n += d.pi[a] * d.f[a * 3 + b] * d.pi[b];
  }
  return d;
}

}  // namespace geocomm
