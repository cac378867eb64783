// Copyright 2026 The NDLS Authors
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

#include "ndls/graph.hpp"

#include <algorithm>
#include <limits>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ndls/errors.hpp"

namespace ndls {

Graph::Graph() : data_(std::make_shared<Data>()) {}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  auto data = std::make_shared<Data>();
  data->n = node_count;

  std::vector<Edge> directed;
  directed.reserve(2 * edges.size() + node_count);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw BoundsError("edge (" + std::to_string(u) + ", " +
                        std::to_string(v) + ") exceeds node count " +
                        std::to_string(node_count));
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    directed.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i));
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  data->offsets.assign(node_count + 1, 0);
  data->cols.resize(directed.size());
  for (std::size_t e = 0; e < directed.size(); ++e) {
    ++data->offsets[directed[e].first + 1];
    data->cols[e] = directed[e].second;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    data->offsets[i + 1] += data->offsets[i];
  }
  data->m = (directed.size() - node_count) / 2;

  auto [labels, stats] = connected_components(data->offsets, data->cols);
  data->component = std::move(labels);
  data->component_stats = std::move(stats);
  return Graph(std::move(data));
}

std::vector<double> Graph::degrees_tilde() const {
  std::vector<double> d(num_nodes());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = static_cast<double>(degree_tilde(static_cast<NodeId>(i)));
  }
  return d;
}

std::size_t Graph::largest_component() const {
  const auto& stats = data_->component_stats;
  std::size_t best = 0;
  for (std::size_t g = 1; g < stats.size(); ++g) {
    if (stats[g].nodes > stats[best].nodes) best = g;
  }
  return best;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < num_nodes(); ++i) {
    for (NodeId j : row(static_cast<NodeId>(i))) {
      if (i < j) out.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<ComponentStats>>
connected_components(std::span<const std::size_t> offsets,
                     std::span<const NodeId> cols) {
  const std::size_t n = offsets.empty() ? 0 : offsets.size() - 1;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnset);
  std::vector<ComponentStats> stats;
  std::vector<NodeId> queue;
  queue.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != kUnset) continue;
    const std::size_t g = stats.size();
    ComponentStats cs;
    std::size_t directed_edges = 0;
    queue.clear();
    queue.push_back(static_cast<NodeId>(s));
    label[s] = g;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      ++cs.nodes;
      for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
        const NodeId v = cols[e];
        if (v == u) continue;
        ++directed_edges;
        if (label[v] == kUnset) {
          label[v] = g;
          queue.push_back(v);
        }
      }
    }
    cs.edges = directed_edges / 2;
    stats.push_back(cs);
  }
  return {std::move(label), std::move(stats)};
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t' && ch != '\r') return false;
  }
  return true;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
      ++i;
    }
    if (i >= line.size() || line[i] == '#') break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r' && line[j] != '#') {
      ++j;
    }
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t parse_node_id(std::string_view token, const std::string& source,
                            std::size_t line_no) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(source, line_no,
                     "expected non-negative integer node id, got '" +
                         std::string(token) + "'");
  }
  return value;
}

Graph build_checked(std::vector<Edge>& edges, std::size_t n, bool symmetrize,
                    const std::string& source) {
  if (!symmetrize) {
    std::vector<Edge> fwd, rev;
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      fwd.emplace_back(u, v);
      rev.emplace_back(v, u);
    }
    std::sort(fwd.begin(), fwd.end());
    std::sort(rev.begin(), rev.end());
    fwd.erase(std::unique(fwd.begin(), fwd.end()), fwd.end());
    rev.erase(std::unique(rev.begin(), rev.end()), rev.end());
    if (fwd != rev) {
      throw DataError(source +
                      ": edge list is not symmetric and symmetrize is off");
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph load_graph(std::istream& in, const LoadOptions& options,
                 const std::string& source_name) {
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError(source_name, line_no,
                       "expected two node ids, got " +
                           std::to_string(tokens.size()) + " tokens");
    }
    const std::uint64_t u = parse_node_id(tokens[0], source_name, line_no);
    const std::uint64_t v = parse_node_id(tokens[1], source_name, line_no);
    if (options.node_count && (u >= *options.node_count ||
                               v >= *options.node_count)) {
      throw BoundsError(source_name + ":" + std::to_string(line_no) +
                        ": node id exceeds declared node count " +
                        std::to_string(*options.node_count));
    }
    if (u > std::numeric_limits<NodeId>::max() - 1 ||
        v > std::numeric_limits<NodeId>::max() - 1) {
      throw BoundsError(source_name + ":" + std::to_string(line_no) +
                        ": node id out of 32-bit range");
    }
    max_id = std::max({max_id, u, v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  const std::size_t n =
      options.node_count ? *options.node_count
                         : (any ? static_cast<std::size_t>(max_id) + 1 : 0);
  return build_checked(edges, n, options.symmetrize, source_name);
}

Graph load_graph(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  return load_graph(in, options, path);
}

NodeId IdMap::intern(const std::string& external) {
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), external,
      [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it != sorted_.end() && it->first == external) return it->second;
  const auto id = static_cast<NodeId>(names_.size());
  names_.push_back(external);
  sorted_.insert(it, {external, id});
  return id;
}

std::optional<NodeId> IdMap::find(const std::string& external) const {
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), external,
      [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it != sorted_.end() && it->first == external) return it->second;
  return std::nullopt;
}

void IdMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write id map: " + path);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    out << names_[i] << '\t' << i << '\n';
  }
}

IdMap IdMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id map: " + path);
  IdMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError(path, line_no, "expected 'external<TAB>dense'");
    }
    const auto dense = parse_node_id(tokens[1], path, line_no);
    if (dense != map.size()) {
      throw ParseError(path, line_no, "dense ids must be 0..n-1 in order");
    }
    map.intern(std::string(tokens[0]));
  }
  return map;
}

Graph load_graph_external_ids(const std::string& path, IdMap& ids) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2) {
      throw ParseError(path, line_no, "expected two node ids");
    }
    const NodeId u = ids.intern(std::string(tokens[0]));
    const NodeId v = ids.intern(std::string(tokens[1]));
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(ids.size(), edges);
}

}  // namespace ndls
