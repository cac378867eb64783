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

#include "ndls/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "ndls/errors.hpp"

namespace ndls {

Graph sparsify_edges(const Graph& graph, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) {
    throw DomainError("edge removal fraction must lie in [0, 1), got " +
                      std::to_string(fraction));
  }
  std::vector<Edge> edges = graph.edge_list();
  const auto removed = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(edges.size())));
  if (removed == 0) return graph;
  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  edges.resize(edges.size() - removed);
  return Graph::from_edges(graph.num_nodes(), edges);
}

Matrix mask_features(const Matrix& features, const SplitMasks& splits,
                     double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw DomainError("feature mask fraction must lie in [0, 1], got " +
                      std::to_string(fraction));
  }
  const auto n = static_cast<std::size_t>(features.rows());
  std::vector<char> is_train(n, 0);
  for (NodeId id : splits.train) {
    if (id >= n) throw BoundsError("train id out of range");
    is_train[id] = 1;
  }
  std::vector<NodeId> pool;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_train[i]) pool.push_back(static_cast<NodeId>(i));
  }
  const auto count = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(pool.size())));
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  Matrix out = features;
  for (std::size_t t = 0; t < count; ++t) out.row(pool[t]).setZero();
  return out;
}

SplitMasks subsample_labels(const SplitMasks& splits,
                            const std::vector<int>& labels,
                            std::size_t per_class, std::uint64_t seed) {
  if (per_class < 1) throw ConfigError("per_class must be at least 1");
  std::map<int, std::vector<NodeId>> pools;
  for (int y : labels) {
    if (y >= 0) pools[y];
  }
  for (NodeId id : splits.train) {
    if (id >= labels.size()) throw BoundsError("train id out of range");
    if (labels[id] < 0) {
      throw DataError("train node " + std::to_string(id) + " is unlabeled");
    }
    pools[labels[id]].push_back(id);
  }
  std::mt19937_64 rng(seed);
  std::vector<char> keep(labels.size(), 0);
  for (auto& [cls, pool] : pools) {
    if (pool.size() < per_class) {
      throw ConfigError("class " + std::to_string(cls) + " has " +
                        std::to_string(pool.size()) +
                        " training nodes, fewer than " +
                        std::to_string(per_class));
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t t = 0; t < per_class; ++t) keep[pool[t]] = 1;
  }
  SplitMasks out = splits;
  out.train.clear();
  for (NodeId id : splits.train) {
    if (keep[id]) out.train.push_back(id);
  }
  return out;
}

}  // namespace ndls
