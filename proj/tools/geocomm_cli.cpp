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

// Command-line front end. Links only the C interface of libgeocomm.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geocomm/geocomm.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPipeline = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code(gc_status s) {
  switch (s) {
    case GC_OK: return 0;
    case GC_ERR_PIPELINE:
    case GC_ERR_SOLVER:
    case GC_ERR_RESOURCE:
    case GC_ERR_INTERNAL: return kExitPipeline;
    default: return kExitValidation;
  }
}

void check(gc_status s) {
  if (s != GC_OK) throw Failure{exit_code(s), std::string(gc_status_name(s)) + ": " + gc_last_error()};
}

[[noreturn]] void invalid(const std::string& message) {
  throw Failure{kExitValidation, "validation error: " + message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using GraphPtr = std::unique_ptr<gc_graph, Deleter<gc_graph, gc_graph_free>>;
using ParamsPtr = std::unique_ptr<gc_params, Deleter<gc_params, gc_params_free>>;
using DetectionPtr = std::unique_ptr<gc_detection, Deleter<gc_detection, gc_detection_free>>;

struct CString {
  char* p = nullptr;
  ~CString() { gc_string_free(p); }
};

std::vector<double> number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream tok(token);
    double x = 0.0;
    std::string rest;
    if (!(tok >> x) || (tok >> rest)) invalid(std::string("bad number in ") + what + ": '" + token + "'");
    out.push_back(x);
  }
  if (out.empty()) invalid(std::string(what) + " is empty");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kExitValidation, "i/o error: cannot write " + path};
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{kExitValidation, "i/o error: cannot create " + dir + ": " + ec.message()};
}

// Graph input shared by detect and baseline: an edge list or a generator.
struct InputOptions {
  std::string input;
  std::string params;
  std::string model = "sbm";
  std::string theta_values;
  std::string theta_probs;
  std::size_t n = 0;
  std::uint64_t gen_seed = 1;
  std::string labels;

  void add_to(CLI::App* app) {
    app->add_option("--input", input, "Edge list file");
    app->add_option("--params", params, "Block-model parameter file (generate the input)");
    app->add_option("--model", model, "Generator model when --params is given")
        ->check(CLI::IsMember({"sbm", "irgm", "dcbm"}));
    app->add_option("--theta-values", theta_values, "DCBM weight values, comma separated");
    app->add_option("--theta-probs", theta_probs, "DCBM weight probabilities, comma separated");
    app->add_option("--n", n, "Number of vertices to generate");
    app->add_option("--gen-seed", gen_seed, "Generator seed");
    app->add_option("--labels", labels, "Ground-truth labels for scoring");
  }
};

gc_model model_of(const std::string& m) {
  if (m == "irgm") return GC_MODEL_IRGM;
  if (m == "dcbm") return GC_MODEL_DCBM;
  return GC_MODEL_SBM;
}

GraphPtr generate_graph(const std::string& params_path, const std::string& model, std::size_t n,
                        std::uint64_t seed, const std::string& theta_values,
                        const std::string& theta_probs, ParamsPtr* params_out = nullptr) {
  gc_params* raw = nullptr;
  check(gc_params_load(params_path.c_str(), &raw));
  ParamsPtr params(raw);
  std::vector<double> tv, tp;
  if (model == "dcbm") {
    if (theta_values.empty() || theta_probs.empty()) {
      invalid("--model dcbm needs --theta-values and --theta-probs");
    }
    tv = number_list(theta_values, "--theta-values");
    tp = number_list(theta_probs, "--theta-probs");
    if (tv.size() != tp.size()) invalid("--theta-values and --theta-probs differ in length");
  }
  gc_graph* g = nullptr;
  check(gc_generate(model_of(model), params.get(), n, seed, tv.data(), tp.data(), tv.size(), &g));
  if (params_out) *params_out = std::move(params);
  return GraphPtr(g);
}

GraphPtr load_input(const InputOptions& in) {
  const bool from_file = !in.input.empty();
  const bool from_params = !in.params.empty();
  if (from_file == from_params) invalid("give exactly one of --input or --params");
  GraphPtr g;
  if (from_file) {
    gc_graph* raw = nullptr;
    check(gc_graph_load(in.input.c_str(), &raw));
    g.reset(raw);
    std::size_t loops = 0, dups = 0;
    gc_graph_cleanup(g.get(), &loops, &dups);
    if (loops || dups) {
      std::cerr << "warning: dropped " << loops << " self-loops and " << dups
                << " duplicate edges\n";
    }
  } else {
    if (in.n == 0) invalid("--params needs --n");
    g = generate_graph(in.params, in.model, in.n, in.gen_seed, in.theta_values, in.theta_probs);
  }
  if (!in.labels.empty()) check(gc_graph_load_labels(g.get(), in.labels.c_str()));
  return g;
}

struct DetectOptions {
  std::size_t q = 2;
  double cap_k = 3.0;
  std::string cluster = "kmeans";
  std::size_t restarts = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;

  void add_to(CLI::App* app, bool with_cluster) {
    app->add_option("--q", q, "Number of communities")->required();
    if (with_cluster) {
      app->add_option("--cap-k", cap_k, "Distance cap multiplier k (cap = ceil(k ln n))");
      app->add_option("--cluster", cluster, "Clusterer")->check(CLI::IsMember({"kmeans", "gmm"}));
      app->add_option("--threads", threads, "Threads for the distance stage");
    }
    app->add_option("--restarts", restarts, "k-means restarts");
    app->add_option("--seed", seed, "Clustering seed");
    app->add_option("--out", out, "Output directory (labels.txt, id_map.txt, report.txt)");
  }
};

int run_detection(const InputOptions& in, const DetectOptions& opt, bool baseline) {
  GraphPtr g = load_input(in);
  gc_detect_config config;
  gc_detect_config_default(&config);
  config.q = opt.q;
  config.cap_k = opt.cap_k;
  config.clusterer = opt.cluster == "gmm" ? GC_CLUSTER_GMM : GC_CLUSTER_KMEANS;
  config.restarts = opt.restarts;
  config.seed = opt.seed;
  config.threads = opt.threads;
  gc_detection* raw = nullptr;
  check(baseline ? gc_baseline(g.get(), &config, &raw) : gc_detect(g.get(), &config, &raw));
  DetectionPtr d(raw);
  if (gc_graph_has_labels(g.get())) {
    double rate = 0.0;
    check(gc_detection_score(d.get(), g.get(), &rate));
  }
  const std::string report = gc_detection_report(d.get());
  if (opt.out.empty()) {
    std::vector<std::uint32_t> labels(gc_detection_size(d.get()));
    check(gc_detection_labels(d.get(), labels.data(), labels.size()));
    std::cerr << report;
    for (std::size_t i = 0; i < labels.size(); ++i) std::cout << i << ' ' << labels[i] << '\n';
  } else {
    ensure_dir(opt.out);
    check(gc_detection_write_labels(d.get(), g.get(), (opt.out + "/labels.txt").c_str()));
    check(gc_graph_write_id_map(g.get(), (opt.out + "/id_map.txt").c_str()));
    write_text(opt.out + "/report.txt", report);
    std::cout << report;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection from graph distances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gc_version()));

  InputOptions detect_in, baseline_in;
  DetectOptions detect_opt, baseline_opt;
  auto* detect = app.add_subcommand("detect", "Geodesic spectral community detection");
  detect_in.add_to(detect);
  detect_opt.add_to(detect, true);
  auto* baseline = app.add_subcommand("baseline", "Adjacency spectral clustering baseline");
  baseline_in.add_to(baseline);
  baseline_opt.add_to(baseline, false);

  std::string gen_model = "sbm", gen_params, gen_out, gen_tv, gen_tp;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  auto* generate = app.add_subcommand("generate", "Sample a random graph");
  generate->add_option("--model", gen_model, "sbm, irgm or dcbm")
      ->check(CLI::IsMember({"sbm", "irgm", "dcbm"}));
  generate->add_option("params", gen_params, "Block-model parameter file")->required();
  generate->add_option("--n", gen_n, "Number of vertices")->required();
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--theta-values", gen_tv, "DCBM weight values, comma separated");
  generate->add_option("--theta-probs", gen_tp, "DCBM weight probabilities, comma separated");
  generate->add_option("--out", gen_out, "Output directory (edges.txt, labels.txt, report.txt)")
      ->required();

  std::string exp_spec = "equal", exp_nu = "1,5,10,15", exp_lt = "0,0.25,0.5,0.75,1", exp_out;
  std::size_t exp_n = 1200, exp_seeds = 1;
  std::uint64_t exp_seed = 1;
  unsigned exp_threads = 1;
  bool exp_no_timing = false;
  auto* experiment = app.add_subcommand("experiment", "Sweep the three-block design");
  experiment->add_option("--spec", exp_spec, "Density variant")
      ->check(CLI::IsMember({"equal", "unequal"}));
  experiment->add_option("--nu", exp_nu, "Comma-separated nu grid (integers in [1, 15])");
  experiment->add_option("--lambda-tilde", exp_lt, "Comma-separated grid in [0, 1]");
  experiment->add_option("--n", exp_n, "Vertices per graph");
  experiment->add_option("--seeds", exp_seeds, "Replicates per grid point");
  experiment->add_option("--seed", exp_seed, "Base seed");
  experiment->add_option("--threads", exp_threads, "Grid cells run in parallel");
  experiment->add_flag("--no-timing", exp_no_timing, "Leave the runtime column empty");
  experiment->add_option("--out", exp_out, "CSV output file (default: stdout)");

  std::string prof_params, prof_input, prof_labels, prof_out;
  std::size_t prof_n = 0, prof_pairs = 2000;
  std::uint64_t prof_seed = 1;
  auto* profile = app.add_subcommand("profile-distances",
                                     "Compare sampled distances with growth-rate predictions");
  profile->add_option("--params", prof_params, "Block-model parameter file")->required();
  profile->add_option("--n", prof_n, "Vertices to generate (when no --input)");
  profile->add_option("--input", prof_input, "Edge list instead of a generated graph");
  profile->add_option("--labels", prof_labels, "Type labels for --input");
  profile->add_option("--pairs", prof_pairs, "Connected pairs per type pair");
  profile->add_option("--seed", prof_seed, "Seed");
  profile->add_option("--out", prof_out, "CSV output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*detect) return run_detection(detect_in, detect_opt, false);
    if (*baseline) return run_detection(baseline_in, baseline_opt, true);
    if (*generate) {
      ParamsPtr params;
      GraphPtr g = generate_graph(gen_params, gen_model, gen_n, gen_seed, gen_tv, gen_tp, &params);
      ensure_dir(gen_out);
      check(gc_graph_write(g.get(), (gen_out + "/edges.txt").c_str()));
      check(gc_graph_write_labels(g.get(), (gen_out + "/labels.txt").c_str()));
      CString text;
      check(gc_params_describe(params.get(), gen_n, &text.p));
      std::size_t giant = 0;
      check(gc_graph_giant_size(g.get(), &giant));
      std::ostringstream report;
      report << "model: " << gen_model << "\nvertices: " << gc_graph_num_vertices(g.get())
             << "\nedges: " << gc_graph_num_edges(g.get()) << "\ngiant component: " << giant
             << '\n'
             << text.p;
      write_text(gen_out + "/report.txt", report.str());
      std::cout << report.str();
      return 0;
    }
    if (*experiment) {
      std::vector<int> nu;
      for (double x : number_list(exp_nu, "--nu")) {
        if (x != static_cast<int>(x)) invalid("--nu values must be integers");
        nu.push_back(static_cast<int>(x));
      }
      std::vector<double> lt = number_list(exp_lt, "--lambda-tilde");
      gc_experiment_config config{};
      config.variant = exp_spec == "unequal" ? GC_VARIANT_UNEQUAL : GC_VARIANT_EQUAL;
      config.nu = nu.data();
      config.nu_count = nu.size();
      config.lambda_tilde = lt.data();
      config.lambda_tilde_count = lt.size();
      config.n = exp_n;
      config.seeds = exp_seeds;
      config.base_seed = exp_seed;
      config.threads = exp_threads;
      config.include_timing = exp_no_timing ? 0 : 1;
      gc_detect_config_default(&config.detect);
      CString csv;
      check(gc_run_experiment(&config, &csv.p));
      if (exp_out.empty()) {
        std::cout << csv.p;
      } else {
        write_text(exp_out, csv.p);
      }
      return 0;
    }
    if (*profile) {
      gc_params* raw = nullptr;
      check(gc_params_load(prof_params.c_str(), &raw));
      ParamsPtr params(raw);
      GraphPtr g;
      if (!prof_input.empty()) {
        if (prof_labels.empty()) invalid("--input needs --labels");
        gc_graph* rg = nullptr;
        check(gc_graph_load(prof_input.c_str(), &rg));
        g.reset(rg);
        check(gc_graph_load_labels(g.get(), prof_labels.c_str()));
      } else {
        if (prof_n == 0) invalid("give --n or --input");
        gc_graph* rg = nullptr;
        check(gc_generate(GC_MODEL_SBM, params.get(), prof_n, prof_seed, nullptr, nullptr, 0, &rg));
        g.reset(rg);
      }
      CString csv;
      check(gc_profile_distances(g.get(), params.get(), prof_pairs, prof_seed, &csv.p));
      if (prof_out.empty()) {
        std::cout << csv.p;
      } else {
        write_text(prof_out, csv.p);
      }
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << f.message << '\n';
    return f.code;
  }
  return 0;
}
