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

#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ndls/types.hpp"

namespace ndls {

struct ComponentStats {
  std::size_t nodes = 0;  // n_g
  std::size_t edges = 0;  // m_g, undirected, self-loops excluded

  // 2 m_g + n_g: the stationary denominator of the component.
  std::size_t volume() const { return 2 * edges + nodes; }
};

using Edge = std::pair<NodeId, NodeId>;

// Undirected graph stored as the CSR of A + I. Every node carries exactly one
// self-loop; duplicate and reversed edges collapse. Immutable once built, and
// cheap to copy (the arrays are shared).
class Graph {
 public:
  Graph();

  // Builds from an undirected edge list. Self-loops in `edges` are ignored
  // (one is always added per node). Throws BoundsError for ids >= node_count.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t num_nodes() const { return data_->n; }
  std::size_t num_edges() const { return data_->m; }

  // 2m + n over the whole graph.
  std::size_t volume() const { return 2 * data_->m + data_->n; }

  std::span<const std::size_t> row_offsets() const { return data_->offsets; }
  std::span<const NodeId> col_indices() const { return data_->cols; }

  // Row of A + I for node i, sorted ascending, self-loop included.
  std::span<const NodeId> row(NodeId i) const {
    return {data_->cols.data() + data_->offsets[i],
            data_->offsets[i + 1] - data_->offsets[i]};
  }

  // d~_i = d_i + 1.
  std::size_t degree_tilde(NodeId i) const {
    return data_->offsets[i + 1] - data_->offsets[i];
  }
  std::vector<double> degrees_tilde() const;

  std::span<const std::size_t> component_id() const {
    return data_->component;
  }
  std::span<const ComponentStats> components() const {
    return data_->component_stats;
  }
  const ComponentStats& component_of(NodeId i) const {
    return data_->component_stats[data_->component[i]];
  }
  std::size_t largest_component() const;

  // Undirected edges with u < v, in CSR order.
  std::vector<Edge> edge_list() const;

 private:
  struct Data {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::size_t> offsets{0};
    std::vector<NodeId> cols;
    std::vector<std::size_t> component;
    std::vector<ComponentStats> component_stats;
  };

  explicit Graph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

// Labels connected components by BFS in node order; label 0 belongs to the
// component of node 0. Returns (per-node label, per-component stats).
std::pair<std::vector<std::size_t>, std::vector<ComponentStats>>
connected_components(std::span<const std::size_t> offsets,
                     std::span<const NodeId> cols);

struct LoadOptions {
  bool symmetrize = true;
  std::optional<std::size_t> node_count;
};

// Edge-list text: "u v" or "u<TAB>v" per line, 0-based ids, '#' comments.
Graph load_graph(std::istream& in, const LoadOptions& options = {},
                 const std::string& source_name = "<stream>");
Graph load_graph(const std::string& path, const LoadOptions& options = {});

// Maps arbitrary external node ids to dense 0-based ids in first-seen order.
class IdMap {
 public:
  NodeId intern(const std::string& external);
  std::optional<NodeId> find(const std::string& external) const;
  const std::string& external(NodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

  // Sidecar format: "external<TAB>dense" per line.
  void save(const std::string& path) const;
  static IdMap load(const std::string& path);

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, NodeId>> sorted_;  // lookup index
};

// Loads an edge list whose tokens are arbitrary strings, assigning dense ids
// through `ids` (which may be pre-populated from a sidecar).
Graph load_graph_external_ids(const std::string& path, IdMap& ids);

}  // namespace ndls
