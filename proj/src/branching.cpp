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

#include "geocomm/branching.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "geocomm/errors.hpp"
#include "geocomm/spectral.hpp"

namespace geocomm {

std::string BranchingTree::dump() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < size(); ++i) {
    out << i << ' ' << parent[i] << ' ' << type[i] << ' ' << generation[i] << '\n';
  }
  return out.str();
}

namespace {

void check_root(const BlockParams& params, std::uint32_t root_type) {
  if (root_type < 1 || root_type > params.q) {
    throw ArgumentError("root type " + std::to_string(root_type) +
                        " outside [1, " + std::to_string(params.q) + "]");
  }
}

// Mean offspring M_ab = K_ab pi_b, row-major.
std::vector<double> mean_offspring(const BlockParams& params) {
  std::vector<double> m(params.q * params.q);
  for (std::size_t a = 0; a < params.q; ++a) {
    for (std::size_t b = 0; b < params.q; ++b) {
      m[a * params.q + b] = params.kernel(a, b) * params.pi[b];
    }
  }
  return m;
}

std::uint64_t poisson(double mean, Rng& rng) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

}  // namespace

BranchingTree sample_mtbp(const BlockParams& params, std::uint32_t root_type,
                          std::uint32_t max_generation, std::size_t max_population,
                          std::uint64_t seed) {
  params.validate();
  check_root(params, root_type);
  if (max_generation < 1 || max_population < 1) {
    throw ArgumentError("branching bounds must be at least 1");
  }
  const std::size_t q = params.q;
  const auto m = mean_offspring(params);
  Rng rng = make_rng(seed);

  BranchingTree tree;
  tree.root_type = root_type;
  tree.type.push_back(root_type);
  tree.parent.push_back(-1);
  tree.generation.push_back(0);

  std::size_t begin = 0;
  std::size_t end = 1;
  for (std::uint32_t gen = 1; begin < end; ++gen) {
    if (gen > max_generation) {
      tree.truncated = true;
      break;
    }
    for (std::size_t node = begin; node < end && !tree.truncated; ++node) {
      const std::size_t a = tree.type[node] - 1;
      for (std::size_t b = 0; b < q; ++b) {
        std::uint64_t kids = poisson(m[a * q + b], rng);
        if (tree.size() + kids > max_population) {
          tree.truncated = true;
          break;
        }
        for (std::uint64_t c = 0; c < kids; ++c) {
          tree.type.push_back(static_cast<std::uint32_t>(b + 1));
          tree.parent.push_back(static_cast<std::int64_t>(node));
          tree.generation.push_back(gen);
        }
      }
    }
    if (tree.truncated) break;
    begin = end;
    end = tree.size();
  }
  return tree;
}

SurvivalVector survival_prob(const BlockParams& params, double tol,
                             std::size_t max_iter) {
  if (!(tol > 0.0)) throw ArgumentError("survival_prob tolerance must be positive");
  OperatorSummary s = operator_summary(params);
  const std::size_t q = params.q;
  SurvivalVector out;
  out.rho.assign(q, 0.0);
  if (s.lambda <= 1.0) return out;

  const auto m = mean_offspring(params);
  std::vector<double> rho(q, 1.0), next(q);
  auto step = [&](const std::vector<double>& in, std::vector<double>& result) {
    double worst = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
      double load = 0.0;
      for (std::size_t b = 0; b < q; ++b) load += m[a * q + b] * in[b];
      result[a] = -std::expm1(-load);
      worst = std::max(worst, std::abs(result[a] - in[a]));
    }
    return worst;
  };
  for (std::size_t it = 1; it <= max_iter; ++it) {
    double change = step(rho, next);
    rho.swap(next);
    out.iterations = it;
    if (change < tol) {
      // Residual of the returned vector itself.
      out.residual = step(rho, next);
      if (out.residual < tol) {
        out.rho = rho;
        return out;
      }
    }
  }
  out.residual = step(rho, next);
  throw SolverError("survival probability iteration did not converge", out.residual);
}

McEstimate extinction_prob_mc(const BlockParams& params, std::uint32_t root_type,
                              std::size_t trials, std::size_t population_cutoff,
                              std::uint64_t seed, unsigned threads) {
  params.validate();
  check_root(params, root_type);
  if (trials < 1) throw ArgumentError("need at least one trial");
  const std::size_t q = params.q;
  const auto m = mean_offspring(params);

  // One tree per trial on its own stream; only generation type counts are
  // tracked since a sum of Poisson litters is Poisson.
  auto survives = [&](std::size_t trial) {
    Rng rng = make_rng(seed, trial);
    std::vector<std::uint64_t> current(q, 0), next(q);
    current[root_type - 1] = 1;
    std::uint64_t total = 1;
    while (total < population_cutoff) {
      std::fill(next.begin(), next.end(), 0);
      std::uint64_t born = 0;
      for (std::size_t a = 0; a < q; ++a) {
        if (current[a] == 0) continue;
        for (std::size_t b = 0; b < q; ++b) {
          auto kids = poisson(static_cast<double>(current[a]) * m[a * q + b], rng);
          next[b] += kids;
          born += kids;
        }
      }
      if (born == 0) return false;
      total += born;
      current.swap(next);
    }
    return true;
  };

  threads = std::max(1u, threads);
  std::vector<std::size_t> hits(threads, 0);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < trials; i += threads) hits[t] += survives(i) ? 1 : 0;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  McEstimate est;
  est.trials = trials;
  for (auto h : hits) est.successes += h;
  est.estimate = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

Matrix conditioned_kernel(const BlockParams& params, const SurvivalVector& rho) {
  params.validate();
  const std::size_t q = params.q;
  if (rho.rho.size() != q) {
    throw ArgumentError("survival vector has " + std::to_string(rho.rho.size()) +
                        " entries, expected " + std::to_string(q));
  }
  Matrix out(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double ra = rho.rho[a];
      const double rb = rho.rho[b];
      out(a, b) = params.kernel(a, b) * (ra + rb - ra * rb);
    }
  }
  return out;
}

GenerationCounts generation_counts(const BranchingTree& tree, std::size_t q,
                                   double lambda) {
  GenerationCounts out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const std::size_t g = tree.generation[i];
    const std::size_t t = tree.type[i];
    if (t < 1 || t > q) throw ArgumentError("tree node type outside [1, q]");
    if (g >= out.counts.size()) out.counts.resize(g + 1, std::vector<std::size_t>(q, 0));
    ++out.counts[g][t - 1];
  }
  out.totals.resize(out.counts.size());
  out.normalized.resize(out.counts.size());
  double scale = 1.0;
  for (std::size_t g = 0; g < out.counts.size(); ++g) {
    for (auto c : out.counts[g]) out.totals[g] += c;
    out.normalized[g] = static_cast<double>(out.totals[g]) / scale;
    scale *= lambda;
  }
  return out;
}

}  // namespace geocomm
