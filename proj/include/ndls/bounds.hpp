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

#include "ndls/graph.hpp"
#include "ndls/lsi.hpp"
#include "ndls/spectral.hpp"

namespace ndls {

// Spectral upper bound on K(i, eps) for the r = 0 transition matrix:
//   log_lambda( eps * sqrt(d~_i / (2 m_g + n_g)) )
// where g is node i's component. Returns nullopt when the bound does not
// apply: lambda outside [0, 1) or a log argument >= 1. lambda == 0 mixes in
// one step and yields 1.
std::optional<double> spectral_lsi_bound(const Graph& graph, double lambda,
                                      double epsilon, NodeId i);

enum class BoundKind { kSpectral, kNeighbor, kUnion };
std::string to_string(BoundKind kind);

struct BoundViolation {
  NodeId node = 0;
  BoundKind kind = BoundKind::kNeighbor;
  std::uint32_t k = 0;  // left-hand side K(i, eps)
  double bound = 0.0;   // right-hand side
};

struct BoundReport {
  double epsilon = 0.0;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
  double rate = 0.0;  // the lambda used in the spectral bound

  // Per node; NaN where the spectral bound is not applicable.
  std::vector<double> spectral;
  // max_{j in N(i)} K(j) + 1 over neighbors excluding i; -1 for nodes with
  // no neighbors.
  std::vector<std::int64_t> neighbor;
  // min(neighbor, ceil(spectral)) over whichever sides apply; -1 if neither.
  std::vector<std::int64_t> union_bound;
  std::vector<BoundViolation> violations;

  std::size_t count(BoundKind kind) const;
};

// Checks K(i) <= ceil(spectral bound), K(i) <= max_{j in N(i)} K(j) + 1 and
// the union of both. Requires an exact, uncapped LsiVector computed with
// r = 0 (ValidationError otherwise). Uses spectral.rate() as lambda.
BoundReport check_bounds(const LsiVector& lsi, const Graph& graph,
                         const SpectralInfo& spectral);

}  // namespace ndls
