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

#include "ndls/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ndls/errors.hpp"

namespace ndls {
namespace {

// Appends G(n, p) edges among `nodes` (ids mapped through the vector).
void append_gnp(const std::vector<NodeId>& nodes, double p,
                std::mt19937_64& rng, std::vector<Edge>& out) {
  const auto n = static_cast<long long>(nodes.size());
  if (p <= 0.0 || n < 2) return;
  if (p >= 1.0) {
    for (long long v = 1; v < n; ++v) {
      for (long long w = 0; w < v; ++w) out.emplace_back(nodes[w], nodes[v]);
    }
    return;
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double log_q = std::log1p(-p);
  long long v = 1;
  long long w = -1;
  while (v < n) {
    const double u = 1.0 - unif(rng);  // (0, 1]
    w += 1 + static_cast<long long>(std::floor(std::log(u) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) out.emplace_back(nodes[w], nodes[v]);
  }
}

// Random edges between two disjoint node sets, each pair with probability p.
void append_bipartite(const std::vector<NodeId>& a,
                      const std::vector<NodeId>& b, double p,
                      std::mt19937_64& rng, std::vector<Edge>& out) {
  if (p <= 0.0 || a.empty() || b.empty()) return;
  const auto total = static_cast<long long>(a.size() * b.size());
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double log_q = p >= 1.0 ? 0.0 : std::log1p(-p);
  long long idx = -1;
  while (true) {
    if (p >= 1.0) {
      ++idx;
    } else {
      const double u = 1.0 - unif(rng);
      idx += 1 + static_cast<long long>(std::floor(std::log(u) / log_q));
    }
    if (idx >= total) break;
    out.emplace_back(a[idx / b.size()], b[idx % b.size()]);
  }
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability not in [0, 1]");
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  append_gnp(nodes, p, rng, edges);
  return Graph::from_edges(n, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
  if (attach < 1) throw DomainError("attachment count must be positive");
  if (n <= attach) throw DomainError("need more nodes than attachments");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeId> ends;  // every edge endpoint, for degree sampling
  // Initial star on nodes 0..attach.
  for (std::size_t v = 1; v <= attach; ++v) {
    edges.emplace_back(0, NodeId(v));
    ends.push_back(0);
    ends.push_back(NodeId(v));
  }
  std::vector<NodeId> picked;
  for (std::size_t v = attach + 1; v < n; ++v) {
    picked.clear();
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    while (picked.size() < attach) {
      const NodeId t = ends[pick(rng)];
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
        picked.push_back(t);
      }
    }
    for (NodeId t : picked) {
      edges.emplace_back(t, NodeId(v));
      ends.push_back(t);
      ends.push_back(NodeId(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph connect_components(const Graph& graph, std::uint64_t seed) {
  const auto& comps = graph.components();
  if (comps.size() <= 1) return graph;
  const std::size_t n = graph.num_nodes();
  std::vector<std::vector<NodeId>> members(comps.size());
  for (std::size_t i = 0; i < n; ++i) {
    members[graph.component_id()[i]].push_back(NodeId(i));
  }
  const std::size_t big = graph.largest_component();
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges = graph.edge_list();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (c == big) continue;
    std::uniform_int_distribution<std::size_t> a(0, members[c].size() - 1);
    std::uniform_int_distribution<std::size_t> b(0, members[big].size() - 1);
    edges.emplace_back(members[c][a(rng)], members[big][b(rng)]);
  }
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(NodeId(i - 1), NodeId(i));
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, NodeId(i));
  return Graph::from_edges(leaves + 1, edges);
}

Dataset planted_partition(const PlantedPartitionOptions& o) {
  if (o.classes < 2 || o.nodes < o.classes) {
    throw ConfigError("planted partition needs >= 2 classes and nodes >= classes");
  }
  const std::size_t n = o.nodes;
  std::mt19937_64 rng(o.seed);

  std::vector<int> labels(n);
  std::vector<std::vector<NodeId>> blocks(o.classes);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = static_cast<int>(i % o.classes);
    blocks[i % o.classes].push_back(NodeId(i));
  }

  std::vector<Edge> edges;
  const double block = static_cast<double>(n) / static_cast<double>(o.classes);
  const double p_in = std::min(1.0, o.degree_in / std::max(1.0, block - 1.0));
  const double p_out = std::min(1.0, o.degree_out / std::max(1.0, double(n) - block));
  for (std::size_t a = 0; a < o.classes; ++a) {
    append_gnp(blocks[a], p_in, rng, edges);
    for (std::size_t b = a + 1; b < o.classes; ++b) {
      append_bipartite(blocks[a], blocks[b], p_out, rng, edges);
    }
  }
  Graph graph = connect_components(Graph::from_edges(n, edges), o.seed + 1);

  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix means(o.classes, o.feature_dim);
  for (Eigen::Index i = 0; i < means.size(); ++i) {
    means.data()[i] = o.signal * normal(rng);
  }
  Matrix features(n, o.feature_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < o.feature_dim; ++f) {
      features(i, f) = means(labels[i], f) + normal(rng);
    }
  }

  SplitMasks splits;
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> taken(o.classes, 0);
  std::vector<NodeId> rest;
  for (NodeId id : order) {
    auto& t = taken[labels[id]];
    if (t < o.train_per_class) {
      splits.train.push_back(id);
      ++t;
    } else {
      rest.push_back(id);
    }
  }
  if (rest.size() < o.val_size + o.test_size) {
    throw ConfigError("not enough nodes for the requested val/test sizes");
  }
  splits.val.assign(rest.begin(), rest.begin() + o.val_size);
  splits.test.assign(rest.begin() + o.val_size,
                     rest.begin() + o.val_size + o.test_size);
  std::sort(splits.train.begin(), splits.train.end());
  std::sort(splits.val.begin(), splits.val.end());
  std::sort(splits.test.begin(), splits.test.end());

  Dataset data{std::move(graph), std::move(features), std::move(labels),
               std::move(splits)};
  data.validate();
  return data;
}

}  // namespace ndls
