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
#include <cstdint>

#include "ndls/dataset.hpp"
#include "ndls/graph.hpp"

namespace ndls {

// G(n, p) by geometric skipping, O(n + m).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

// Preferential attachment: every new node links to `attach` distinct
// earlier nodes with probability proportional to degree. Connected.
Graph barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed);

// Adds one edge from every smaller component to the largest one.
Graph connect_components(const Graph& graph, std::uint64_t seed);

Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);  // hub is node 0

struct PlantedPartitionOptions {
  std::size_t nodes = 600;
  std::size_t classes = 3;
  double degree_in = 4.0;   // expected same-class neighbors per node
  double degree_out = 0.5;  // expected other-class neighbors per node
  std::size_t feature_dim = 16;
  double signal = 0.6;  // class-mean scale; noise has unit variance
  std::size_t train_per_class = 20;
  std::size_t val_size = 150;
  std::size_t test_size = 300;
  std::uint64_t seed = 0;
};

// Homophilous node-classification dataset: nodes are split evenly among
// classes, edges prefer same-class pairs, features are a class mean plus
// Gaussian noise. The graph is patched to be connected.
Dataset planted_partition(const PlantedPartitionOptions& options);

}  // namespace ndls
