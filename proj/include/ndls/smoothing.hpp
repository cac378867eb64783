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
#include <optional>
#include <string>
#include <vector>

#include "ndls/lsi.hpp"
#include "ndls/propagation.hpp"
#include "ndls/types.hpp"

namespace ndls {

enum class SmoothingKernel { kNdls, kSgc, kS2gc };
std::string to_string(SmoothingKernel kernel);

struct SmoothingProvenance {
  SmoothingKernel kernel = SmoothingKernel::kNdls;
  double r = 0.0;
  std::optional<double> epsilon;     // NDLS only
  std::optional<std::uint32_t> k;    // SGC / S2GC depth
  std::optional<std::uint32_t> k_max;
  std::uint32_t max_lsi = 0;         // deepest propagation performed
};

struct SmoothedMatrix {
  Matrix values;
  SmoothingProvenance provenance;
};

// Diagonal weights of the matrix form: M(k)_ii = 1/(K_i+1) for k <= K_i.
struct MWeights {
  std::vector<std::vector<double>> diagonals;  // [k][i], k = 0..max_i K_i

  std::size_t depth() const { return diagonals.size(); }
};

MWeights build_m_weights(const LsiVector& lsi);

// Node-dependent average  X~_i = 1/(K_i+1) sum_{k<=K_i} (A^^k X)_i,
// streamed with one live propagation buffer and one running sum.
SmoothedMatrix ndls_smooth(const PropagationOperator& op, const Matrix& x,
                           const LsiVector& lsi);

// Same kernel applied to soft labels. Rows must be probability vectors
// (non-negative, summing to 1 within 1e-4); no renormalization afterwards.
SmoothedMatrix ndls_smooth_labels(const PropagationOperator& op,
                                  const Matrix& soft_labels,
                                  const LsiVector& lsi);

// A^^k X.
SmoothedMatrix sgc_smooth(const PropagationOperator& op, const Matrix& x,
                          std::uint32_t k);

// 1/(k+1) sum_{j<=k} A^^j X; the NDLS kernel with K_i = k for every node.
SmoothedMatrix s2gc_smooth(const PropagationOperator& op, const Matrix& x,
                           std::uint32_t k);

// Nodes whose row fails the probability-vector check.
std::vector<std::size_t> invalid_probability_rows(const Matrix& soft,
                                                  double tolerance = 1e-4);

}  // namespace ndls
