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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ndls/propagation.hpp"
#include "ndls/types.hpp"

namespace ndls {

enum class LsiMethod { kExact, kSketch };

std::string to_string(LsiMethod method);
LsiMethod lsi_method_from_string(const std::string& name);

// Per-node local smoothing iteration
//   K(i, eps) = min { k : || A^inf_i - (A^^k)_i ||_2 < eps }.
// Nodes that never cross eps within k_max carry k_max and are listed in
// capped_nodes.
struct LsiVector {
  std::vector<std::uint32_t> values;
  double epsilon = 0.0;
  std::uint32_t k_max = 0;
  double r = 0.0;
  LsiMethod method = LsiMethod::kExact;
  std::size_t probes = 0;       // sketch width; 0 for exact
  bool low_confidence = false;  // sketch with too few probes
  std::vector<NodeId> capped_nodes;

  std::size_t size() const { return values.size(); }
  std::uint32_t max_value() const;
  bool operator==(const LsiVector&) const = default;
};

struct InfluenceRow {
  NodeId node = 0;
  std::size_t k = 0;
  std::vector<double> values;  // row `node` of A^^k
};

// Row i of A^^k, computed by pushing e_i through k transpose steps.
InfluenceRow influence_row(const PropagationOperator& op, NodeId i,
                           std::size_t k);

// Two-norm distance between row i of A^^k and the stationary row.
double influence_distance(const PropagationOperator& op, NodeId i,
                          std::size_t k);

struct ExactLsiOptions {
  std::size_t batch = 64;  // influence rows advanced together
};

// Exact minimal k per node. Evaluates every epsilon in one sweep over k;
// the result is ordered like `epsilons`. Throws DomainError for eps <= 0.
std::vector<LsiVector> compute_lsi_exact(const PropagationOperator& op,
                                         std::span<const double> epsilons,
                                         std::uint32_t k_max,
                                         const ExactLsiOptions& options = {});
LsiVector compute_lsi_exact(const PropagationOperator& op, double epsilon,
                            std::uint32_t k_max);

// Below this many probes the sketch is flagged low-confidence.
inline constexpr std::size_t kMinConfidentProbes = 16;

// Gaussian-sketch estimate: the residual (A^^k - A^inf) Z for an n x probes
// matrix Z with N(0, 1/probes) entries is advanced one sparse product per k;
// its row norms estimate every node's distance at once.
std::vector<LsiVector> compute_lsi_sketch(const PropagationOperator& op,
                                          std::span<const double> epsilons,
                                          std::uint32_t k_max,
                                          std::size_t probes,
                                          std::uint64_t seed);
LsiVector compute_lsi_sketch(const PropagationOperator& op, double epsilon,
                             std::uint32_t k_max, std::size_t probes,
                             std::uint64_t seed);

// Per-node sketch distance estimates at a fixed k (diagnostics and tests).
std::vector<double> sketch_distances(const PropagationOperator& op,
                                     std::size_t k, std::size_t probes,
                                     std::uint64_t seed);

inline constexpr std::size_t kExactNodeLimit = 20000;

struct LsiOptions {
  enum class Mode { kAuto, kExact, kSketch } mode = Mode::kAuto;
  std::size_t probes = 128;
  std::uint64_t seed = 0;
};

// Exact up to kExactNodeLimit nodes, sketch beyond.
std::vector<LsiVector> compute_lsi(const PropagationOperator& op,
                                   std::span<const double> epsilons,
                                   std::uint32_t k_max,
                                   const LsiOptions& options = {});

// A vector with every K fixed to `k` (constant-depth smoothing).
LsiVector constant_lsi(std::size_t n, std::uint32_t k);

// CSV "node_id,k".
void write_lsi_csv(const LsiVector& lsi, std::ostream& out);
void save_lsi_csv(const LsiVector& lsi, const std::string& path);
LsiVector load_lsi_csv(const std::string& path);

// Binary sidecar: "NDLSLSI1", u64 n, f64 eps, f64 r, u32 k_max, u32 method,
// u64 probes, u64 capped count, u32 values[n], u32 capped[count]; all LE.
void save_lsi_binary(const LsiVector& lsi, const std::string& path);
LsiVector load_lsi_binary(const std::string& path);

}  // namespace ndls
