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
#include <string>
#include <vector>

#include "ndls/graph.hpp"
#include "ndls/types.hpp"

namespace ndls {

// Train / validation / test node ids.
struct SplitMasks {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;

  // Throws ConfigError if the sets overlap or BoundsError if an id >= n.
  void validate(std::size_t n) const;
  bool operator==(const SplitMasks&) const = default;
};

inline constexpr int kUnlabeled = -1;

// Feature matrices on disk: ".csv" files hold one comma-separated row per
// node; anything else is the binary layout
//   u32 n, u32 f (little-endian), then n*f little-endian float32, row-major.
Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);
Matrix load_matrix_csv(const std::string& path);
void save_matrix_csv(const Matrix& m, const std::string& path);
Matrix load_matrix_binary(const std::string& path);
void save_matrix_binary(const Matrix& m, const std::string& path);

// One integer class per line, -1 for unlabeled.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& labels, const std::string& path);

// One node id per line.
std::vector<NodeId> load_node_ids(const std::string& path);
void save_node_ids(const std::vector<NodeId>& ids, const std::string& path);

SplitMasks load_splits(const std::string& train, const std::string& val,
                       const std::string& test);

// Number of classes: max label + 1 (0 if nothing is labeled).
int num_classes(const std::vector<int>& labels);

struct Dataset {
  Graph graph;
  Matrix features;
  std::vector<int> labels;
  SplitMasks splits;

  int num_classes() const { return ndls::num_classes(labels); }
  // Throws DataError/ShapeError on inconsistent sizes or unlabeled
  // train/val nodes.
  void validate() const;
};

}  // namespace ndls
