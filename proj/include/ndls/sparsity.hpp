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
#include <vector>

#include "ndls/dataset.hpp"
#include "ndls/graph.hpp"
#include "ndls/types.hpp"

namespace ndls {

// Removes floor(fraction * m) undirected edges chosen uniformly at random.
// Both directions go together; self-loops stay. Requires 0 <= fraction < 1.
Graph sparsify_edges(const Graph& graph, double fraction, std::uint64_t seed);

// Zeroes the rows of a uniformly sampled fraction of non-training nodes.
// Rows are kept, so shapes do not change. Requires 0 <= fraction <= 1.
Matrix mask_features(const Matrix& features, const SplitMasks& splits,
                     double fraction, std::uint64_t seed);

// Keeps exactly `per_class` training nodes per class, in their original
// order. Validation and test sets are untouched. Throws ConfigError naming
// the class when its training pool is too small.
SplitMasks subsample_labels(const SplitMasks& splits,
                            const std::vector<int>& labels,
                            std::size_t per_class, std::uint64_t seed);

}  // namespace ndls
