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

#include "geocomm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "geocomm/errors.hpp"

namespace geocomm {
namespace {

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
bool parse_int(std::string_view tok, Int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

template <class Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    ++line_no;
    fn(std::string_view(text).substr(pos, nl - pos), line_no);
    pos = nl + 1;
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::int64_t LoadedGraph::internal_id(std::int64_t external) const {
  auto it = std::lower_bound(external_ids.begin(), external_ids.end(), external);
  if (it == external_ids.end() || *it != external) return -1;
  return it - external_ids.begin();
}

LoadedGraph parse_edge_list(const std::string& text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto body = trim(strip_comment(line));
    if (body.empty()) return;
    auto tok = split_ws(body);
    if (tok.size() != 2) {
      throw ParseError("expected two vertex ids, got " +
                           std::to_string(tok.size()) + " fields",
                       line_no);
    }
    std::int64_t u = 0, v = 0;
    if (!parse_int(tok[0], u) || !parse_int(tok[1], v) || u < 0 || v < 0) {
      throw ParseError("vertex ids must be non-negative integers", line_no);
    }
    raw.emplace_back(u, v);
  });

  LoadedGraph out;
  out.external_ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    out.external_ids.push_back(u);
    out.external_ids.push_back(v);
  }
  std::sort(out.external_ids.begin(), out.external_ids.end());
  out.external_ids.erase(
      std::unique(out.external_ids.begin(), out.external_ids.end()),
      out.external_ids.end());
  out.zero_based = !out.external_ids.empty() && out.external_ids.front() == 0;

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) {
    edges.emplace_back(static_cast<Vertex>(out.internal_id(u)),
                       static_cast<Vertex>(out.internal_id(v)));
  }
  out.graph = Graph::from_edges(out.external_ids.size(), edges, &out.cleanup);
  return out;
}

LoadedGraph load_edge_list(const std::string& path) {
  return parse_edge_list(read_file(path));
}

std::vector<std::pair<std::int64_t, std::uint32_t>> parse_labels(
    const std::string& text) {
  std::vector<std::pair<std::int64_t, std::uint32_t>> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto body = trim(strip_comment(line));
    if (body.empty()) return;
    auto tok = split_ws(body);
    std::int64_t v = 0;
    std::uint32_t label = 0;
    if (tok.size() != 2 || !parse_int(tok[0], v) || !parse_int(tok[1], label) ||
        v < 0) {
      throw ParseError("expected 'vertex label' with non-negative integers",
                       line_no);
    }
    out.emplace_back(v, label);
  });
  return out;
}

std::vector<std::pair<std::int64_t, std::uint32_t>> load_labels(
    const std::string& path) {
  return parse_labels(read_file(path));
}

std::vector<std::uint32_t> align_labels(
    const LoadedGraph& loaded,
    std::span<const std::pair<std::int64_t, std::uint32_t>> pairs) {
  std::vector<std::uint32_t> out(loaded.external_ids.size(), 0);
  for (auto [ext, label] : pairs) {
    auto id = loaded.internal_id(ext);
    if (id >= 0) out[static_cast<std::size_t>(id)] = label;
  }
  return out;
}

void write_edge_list(const std::string& path, const Graph& g,
                     std::span<const std::int64_t> external_ids) {
  std::string buf;
  buf.reserve(g.num_edges() * 12);
  for (auto [u, v] : g.edges()) {
    if (external_ids.empty()) {
      buf += std::to_string(u) + ' ' + std::to_string(v) + '\n';
    } else {
      buf += std::to_string(external_ids[u]) + ' ' +
             std::to_string(external_ids[v]) + '\n';
    }
  }
  write_file(path, buf);
}

void write_labels(const std::string& path, std::span<const std::uint32_t> labels,
                  std::span<const std::int64_t> external_ids) {
  std::string buf;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::int64_t id = external_ids.empty() ? static_cast<std::int64_t>(i)
                                           : external_ids[i];
    buf += std::to_string(id) + ' ' + std::to_string(labels[i]) + '\n';
  }
  write_file(path, buf);
}

void write_id_map(const std::string& path, std::span<const std::int64_t> external_ids) {
  std::string buf = "# external internal\n";
  for (std::size_t i = 0; i < external_ids.size(); ++i) {
    buf += std::to_string(external_ids[i]) + ' ' + std::to_string(i) + '\n';
  }
  write_file(path, buf);
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto body = trim(strip_comment(line));
    if (body.empty()) return;
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    std::string key(trim(body.substr(0, eq)));
    std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (!out.emplace(key, value).second) {
      throw ParseError("duplicate key '" + key + "'", line_no);
    }
  });
  return out;
}

KeyValues load_key_values(const std::string& path) {
  return parse_key_values(read_file(path));
}

std::vector<double> parse_number_list(const std::string& value,
                                      const std::string& key) {
  std::vector<double> out;
  std::string cleaned = value;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      double x = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(x);
    } catch (const std::exception&) {
      throw ValidationError("key '" + key + "': '" + tok + "' is not a number");
    }
  }
  return out;
}

}  // namespace geocomm
