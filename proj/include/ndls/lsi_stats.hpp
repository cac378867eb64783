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

#include "ndls/graph.hpp"
#include "ndls/lsi.hpp"

namespace ndls {

struct CdfPoint {
  std::uint32_t k = 0;
  double cdf = 0.0;  // fraction of nodes with K <= k
  bool operator==(const CdfPoint&) const = default;
};

struct DegreeBucket {
  std::size_t degree = 0;  // d~ (self-loop included)
  double mean_k = 0.0;
  std::size_t count = 0;
  bool operator==(const DegreeBucket&) const = default;
};

struct LsiStats {
  std::vector<CdfPoint> cdf;             // one point per distinct K, ascending
  std::vector<DegreeBucket> by_degree;   // ascending degree
  double spearman = 0.0;                 // rank correlation of d~ and K
  double mean_k = 0.0;
  std::uint32_t max_k = 0;
};

LsiStats lsi_statistics(const LsiVector& lsi, const Graph& graph);

// Spearman rank correlation with average ranks for ties; 0 when either
// side is constant.
double spearman_correlation(const std::vector<double>& x,
                            const std::vector<double>& y);

}  // namespace ndls
