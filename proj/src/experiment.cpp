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

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include "geocomm/errors.hpp"
#include "geocomm/pipeline.hpp"
#include "geocomm/random.hpp"

namespace geocomm {
namespace {

std::string format_number(double x, const char* fmt) {
  if (std::isnan(x)) return "NaN";
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

constexpr const char* kMethods[] = {"geodesic", "adjacency"};

void run_cell(const ExperimentConfig& config, int nu, double lt, std::size_t rep,
              ExperimentRow* rows) {
  for (std::size_t m = 0; m < 2; ++m) {
    rows[m].nu = nu;
    rows[m].lambda_tilde = lt;
    rows[m].seed = rep;
    rows[m].method = kMethods[m];
    rows[m].rate = std::numeric_limits<double>::quiet_NaN();
  }
  const std::uint64_t seed = cell_seed(config.base_seed, nu, lt, rep);
  LabeledGraph lg;
  try {
    ExperimentDesign design = experiment_design(nu, lt, config.variant);
    lg = sample_sbm(design.block_params(config.n), config.n, seed);
  } catch (const std::exception& e) {
    for (std::size_t m = 0; m < 2; ++m) rows[m].error = e.what();
    return;
  }
  PipelineConfig pc = config.pipeline;
  pc.q = 3;
  pc.threads = 1;
  pc.seed = hash_combine(seed, 0xc1u);
  for (std::size_t m = 0; m < 2; ++m) {
    const auto start = std::chrono::steady_clock::now();
    try {
      DetectionResult r = m == 0 ? detect_communities(lg.graph, pc)
                                 : adjacency_spectral_baseline(lg.graph, pc);
      rows[m].rate = score_detection(r, lg.labels);
    } catch (const std::exception& e) {
      rows[m].error = e.what();
    }
    rows[m].runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (nu.empty() || lambda_tilde.empty()) throw ValidationError("experiment grids must be nonempty");
  for (int v : nu) {
    if (v < 1 || v > 15) throw ValidationError("nu = " + std::to_string(v) + " outside [1, 15]");
  }
  for (double v : lambda_tilde) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("lambda_tilde = " + format_number(v, "%g") + " outside [0, 1]");
    }
  }
  if (n < 3) throw ValidationError("experiment needs n >= 3");
  if (seeds < 1) throw ValidationError("experiment needs at least one seed");
  if (threads < 1) throw ValidationError("threads must be at least 1");
}

std::uint64_t cell_seed(std::uint64_t base, int nu, double lambda_tilde,
                        std::size_t replicate) {
  std::uint64_t h = mix64(base);
  h = hash_combine(h, static_cast<std::uint64_t>(nu));
  h = hash_combine(h, std::bit_cast<std::uint64_t>(lambda_tilde + 0.0));
  return hash_combine(h, replicate);
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Cell {
    int nu;
    double lt;
    std::size_t rep;
  };
  std::vector<Cell> cells;
  for (int nu : config.nu) {
    for (double lt : config.lambda_tilde) {
      for (std::size_t rep = 0; rep < config.seeds; ++rep) cells.push_back({nu, lt, rep});
    }
  }
  std::vector<ExperimentRow> rows(2 * cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      run_cell(config, cells[i].nu, cells[i].lt, cells[i].rep, rows.data() + 2 * i);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(config.threads, cells.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::string experiment_csv(std::span<const ExperimentRow> rows, bool include_timing) {
  std::string out = "nu,lambda_tilde,seed,method,rate,runtime,error\n";
  for (const auto& r : rows) {
    out += std::to_string(r.nu) + ',' + format_number(r.lambda_tilde, "%.6g") + ',' +
           std::to_string(r.seed) + ',' + r.method + ',' + format_number(r.rate, "%.6f") + ',' +
           (include_timing ? format_number(r.runtime, "%.4f") : std::string()) + ',' +
           csv_field(r.error) + '\n';
  }
  return out;
}

}  // namespace geocomm
