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
#include <span>
#include <vector>

#include "ndls/graph.hpp"
#include "ndls/types.hpp"

namespace ndls {

// The normalized adjacency  A^ = D~^{r-1} (A + I) D~^{-r}  over a Graph.
//
// Entry (i, j) factors as row_scale[i] * col_scale[j] with
// row_scale = d~^{r-1} and col_scale = d~^{-r}; `values()` holds the product
// aligned with the graph's CSR so products never recompute powers.
//
// r = 0 gives the row-stochastic transition matrix D~^{-1} A~, r = 1 the
// column-stochastic A~ D~^{-1}, r = 0.5 the symmetric normalization.
class PropagationOperator {
 public:
  PropagationOperator(Graph graph, double r);

  const Graph& graph() const { return graph_; }
  double r() const { return r_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }

  std::span<const double> values() const { return values_; }
  double row_scale(NodeId i) const { return row_scale_[i]; }
  double col_scale(NodeId j) const { return col_scale_[j]; }

  // Weight of entry (i, j); zero when j is not in row i.
  double weight(NodeId i, NodeId j) const;

  // One propagation step  A^ X.  Rows are reduced in fixed neighbor order, so
  // the result does not depend on the thread count.
  Matrix propagate(const Matrix& x) const;
  void propagate_into(const Matrix& x, Matrix& out) const;

  // A^^T X, used to advance influence rows (row i of A^^k as a column).
  void propagate_transpose_into(const Matrix& x, Matrix& out) const;

 private:
  Graph graph_;
  double r_;
  std::vector<double> row_scale_;
  std::vector<double> col_scale_;
  std::vector<double> values_;
};

// Throws DomainError unless 0 <= r <= 1.
PropagationOperator build_operator(const Graph& graph, double r);

// Closed form of lim_k A^^k restricted to connected components:
//   A^inf(i, j) = d~_i^r d~_j^{1-r} / (2 m_g + n_g)   if i, j share component g
//                 0                                  otherwise.
class StationaryModel {
 public:
  StationaryModel(const Graph& graph, double r);
  explicit StationaryModel(const PropagationOperator& op)
      : StationaryModel(op.graph(), op.r()) {}

  double entry(NodeId i, NodeId j) const;

  // Dense row i of A^inf (the over-smoothed influence row).
  std::vector<double> row(NodeId i) const;

  // Squared two-norm of row i, in closed form.
  double row_norm_squared(NodeId i) const;

  // A^inf Z: one rank-1 update per component.
  Matrix apply(const Matrix& z) const;

  double left(NodeId i) const { return left_[i]; }
  double right(NodeId j) const { return right_[j]; }
  double denominator(NodeId i) const {
    return denominator_[component_[i]];
  }

 private:
  std::vector<std::size_t> component_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> denominator_;         // per component
  std::vector<double> right_norm_squared_;  // per component, sum right_j^2
};

// Convenience wrapper mirroring the library's free-function surface.
inline std::vector<double> stationary_row(const StationaryModel& model,
                                          NodeId i) {
  return model.row(i);
}

}  // namespace ndls
