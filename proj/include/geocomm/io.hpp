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

#ifndef GEOCOMM_IO_HPP_
#define GEOCOMM_IO_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geocomm/graph.hpp"

namespace geocomm {

// A graph read from an edge-list file. External ids are compacted to dense
// internal ids in ascending external order.
struct LoadedGraph {
  Graph graph;
  std::vector<std::int64_t> external_ids;  // external id of internal vertex i
  bool zero_based = true;                  // whether external id 0 occurs
  EdgeCleanup cleanup;

  // Internal id of an external id, or -1 when absent.
  std::int64_t internal_id(std::int64_t external) const;
};

// Parses "u v" lines; blank lines and text after '#' are ignored. Throws
// IoError if the file cannot be opened and ParseError on a malformed line.
LoadedGraph load_edge_list(const std::string& path);
LoadedGraph parse_edge_list(const std::string& text);

// "vertex label" pairs, vertices given as external ids.
std::vector<std::pair<std::int64_t, std::uint32_t>> load_labels(
    const std::string& path);
std::vector<std::pair<std::int64_t, std::uint32_t>> parse_labels(
    const std::string& text);

// Per-internal-vertex labels from external (vertex, label) pairs; vertices
// without an entry get 0.
std::vector<std::uint32_t> align_labels(
    const LoadedGraph& loaded,
    std::span<const std::pair<std::int64_t, std::uint32_t>> pairs);

void write_edge_list(const std::string& path, const Graph& g,
                     std::span<const std::int64_t> external_ids = {});
void write_labels(const std::string& path, std::span<const std::uint32_t> labels,
                  std::span<const std::int64_t> external_ids = {});
void write_id_map(const std::string& path, std::span<const std::int64_t> external_ids);

// Flat "key = value" text with '#' comments. Duplicate keys are a parse error.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::string& path);

std::vector<double> parse_number_list(const std::string& value,
                                      const std::string& key);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace geocomm

#endif  // GEOCOMM_IO_HPP_
