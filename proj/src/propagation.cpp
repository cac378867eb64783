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

#include "ndls/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndls/errors.hpp"

namespace ndls {

PropagationOperator::PropagationOperator(Graph graph, double r)
    : graph_(std::move(graph)), r_(r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("convolution coefficient r must lie in [0, 1], got " +
                      std::to_string(r));
  }
  const std::size_t n = graph_.num_nodes();
  row_scale_.resize(n);
  col_scale_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(graph_.degree_tilde(NodeId(i)));
    row_scale_[i] = std::pow(d, r - 1.0);
    col_scale_[i] = std::pow(d, -r);
  }
  const auto offsets = graph_.row_offsets();
  const auto cols = graph_.col_indices();
  values_.resize(cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      values_[e] = row_scale_[i] * col_scale_[cols[e]];
    }
  }
}

double PropagationOperator::weight(NodeId i, NodeId j) const {
  const auto row = graph_.row(i);
  auto it = std::lower_bound(row.begin(), row.end(), j);
  if (it == row.end() || *it != j) return 0.0;
  return values_[graph_.row_offsets()[i] + std::size_t(it - row.begin())];
}

Matrix PropagationOperator::propagate(const Matrix& x) const {
  Matrix out;
  propagate_into(x, out);
  return out;
}

void PropagationOperator::propagate_into(const Matrix& x, Matrix& out) const {
  const std::size_t n = num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw ShapeError("propagate: matrix has " + std::to_string(x.rows()) +
                     " rows, graph has " + std::to_string(n) + " nodes");
  }
  out.resize(x.rows(), x.cols());
  const auto offsets = graph_.row_offsets();
  const auto cols = graph_.col_indices();
  const Eigen::Index width = x.cols();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    double* dst = out.data() + i * width;
    std::fill(dst, dst + width, 0.0);
    for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const double w = values_[e];
      const double* src = x.data() + std::ptrdiff_t(cols[e]) * width;
      for (Eigen::Index c = 0; c < width; ++c) dst[c] += w * src[c];
    }
  }
}

void PropagationOperator::propagate_transpose_into(const Matrix& x,
                                                   Matrix& out) const {
  // (A^^T)(j, l) = A^(l, j) = row_scale[l] * col_scale[j] over the symmetric
  // pattern, so row j of the result is col_scale[j] * sum_l row_scale[l] x_l.
  const std::size_t n = num_nodes();
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw ShapeError("propagate_transpose: row count mismatch");
  }
  out.resize(x.rows(), x.cols());
  const auto offsets = graph_.row_offsets();
  const auto cols = graph_.col_indices();
  const Eigen::Index width = x.cols();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t j = 0; j < rows; ++j) {
    double* dst = out.data() + j * width;
    std::fill(dst, dst + width, 0.0);
    for (std::size_t e = offsets[j]; e < offsets[j + 1]; ++e) {
      const NodeId l = cols[e];
      const double w = row_scale_[l] * col_scale_[j];
      const double* src = x.data() + std::ptrdiff_t(l) * width;
      for (Eigen::Index c = 0; c < width; ++c) dst[c] += w * src[c];
    }
  }
}

PropagationOperator build_operator(const Graph& graph, double r) {
  return PropagationOperator(graph, r);
}

StationaryModel::StationaryModel(const Graph& graph, double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw DomainError("convolution coefficient r must lie in [0, 1]");
  }
  const std::size_t n = graph.num_nodes();
  const auto comp = graph.component_id();
  component_.assign(comp.begin(), comp.end());
  left_.resize(n);
  right_.resize(n);
  const auto stats = graph.components();
  denominator_.resize(stats.size());
  right_norm_squared_.assign(stats.size(), 0.0);
  for (std::size_t g = 0; g < stats.size(); ++g) {
    denominator_[g] = static_cast<double>(stats[g].volume());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(graph.degree_tilde(NodeId(i)));
    left_[i] = std::pow(d, r);
    right_[i] = std::pow(d, 1.0 - r);
    right_norm_squared_[component_[i]] += right_[i] * right_[i];
  }
}

double StationaryModel::entry(NodeId i, NodeId j) const {
  if (component_[i] != component_[j]) return 0.0;
  return left_[i] * right_[j] / denominator_[component_[i]];
}

std::vector<double> StationaryModel::row(NodeId i) const {
  if (i >= left_.size()) {
    throw BoundsError("stationary_row: node " + std::to_string(i) +
                      " out of range");
  }
  std::vector<double> out(left_.size(), 0.0);
  const std::size_t g = component_[i];
  const double scale = left_[i] / denominator_[g];
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (component_[j] == g) out[j] = scale * right_[j];
  }
  return out;
}

double StationaryModel::row_norm_squared(NodeId i) const {
  const std::size_t g = component_[i];
  const double scale = left_[i] / denominator_[g];
  return scale * scale * right_norm_squared_[g];
}

Matrix StationaryModel::apply(const Matrix& z) const {
  const std::size_t n = left_.size();
  if (static_cast<std::size_t>(z.rows()) != n) {
    throw ShapeError("StationaryModel::apply: row count mismatch");
  }
  Matrix sums = Matrix::Zero(Eigen::Index(denominator_.size()), z.cols());
  for (std::size_t j = 0; j < n; ++j) {
    sums.row(Eigen::Index(component_[j])) += right_[j] * z.row(Eigen::Index(j));
  }
  Matrix out(z.rows(), z.cols());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t g = component_[i];
    out.row(Eigen::Index(i)) =
        (left_[i] / denominator_[g]) * sums.row(Eigen::Index(g));
  }
  return out;
}

}  // namespace ndls
