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

#include "ndls/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "ndls/errors.hpp"

namespace ndls {

std::string to_string(SmoothingKernel kernel) {
  switch (kernel) {
    case SmoothingKernel::kNdls:
      return "ndls";
    case SmoothingKernel::kSgc:
      return "sgc";
    case SmoothingKernel::kS2gc:
      return "s2gc";
  }
  return "unknown";
}

MWeights build_m_weights(const LsiVector& lsi) {
  MWeights m;
  const std::size_t n = lsi.values.size();
  const std::size_t depth = n == 0 ? 0 : std::size_t(lsi.max_value()) + 1;
  m.diagonals.assign(depth, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 1.0 / (double(lsi.values[i]) + 1.0);
    for (std::size_t k = 0; k <= lsi.values[i]; ++k) m.diagonals[k][i] = w;
  }
  return m;
}

namespace {

// The one smoothing kernel behind features, labels and S2GC.
Matrix local_average(const PropagationOperator& op, const Matrix& x,
                     std::span<const std::uint32_t> depth) {
  const Eigen::Index n = x.rows();
  Matrix sum = x;
  const std::uint32_t max_depth =
      depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
  Matrix current = x;
  Matrix next;
  for (std::uint32_t k = 1; k <= max_depth; ++k) {
    op.propagate_into(current, next);
    current.swap(next);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (depth[std::size_t(i)] >= k) sum.row(i) += current.row(i);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    sum.row(i) /= double(depth[std::size_t(i)]) + 1.0;
  }
  return sum;
}

void check_rows(const PropagationOperator& op, const Matrix& x,
                const char* what) {
  if (std::size_t(x.rows()) != op.num_nodes()) {
    throw ShapeError(std::string(what) + ": matrix has " +
                     std::to_string(x.rows()) + " rows, graph has " +
                     std::to_string(op.num_nodes()) + " nodes");
  }
}

}  // namespace

SmoothedMatrix ndls_smooth(const PropagationOperator& op, const Matrix& x,
                           const LsiVector& lsi) {
  check_rows(op, x, "ndls_smooth");
  if (lsi.values.size() != op.num_nodes()) {
    throw ShapeError("ndls_smooth: LSI has " +
                     std::to_string(lsi.values.size()) + " entries, graph " +
                     std::to_string(op.num_nodes()));
  }
  SmoothedMatrix out;
  out.values = local_average(op, x, lsi.values);
  out.provenance.kernel = SmoothingKernel::kNdls;
  out.provenance.r = op.r();
  out.provenance.epsilon = lsi.epsilon;
  out.provenance.k_max = lsi.k_max;
  out.provenance.max_lsi = lsi.max_value();
  return out;
}

std::vector<std::size_t> invalid_probability_rows(const Matrix& soft,
                                                  double tolerance) {
  std::vector<std::size_t> bad;
  for (Eigen::Index i = 0; i < soft.rows(); ++i) {
    const auto row = soft.row(i);
    const bool finite = row.allFinite();
    if (!finite || row.minCoeff() < 0.0 ||
        std::abs(row.sum() - 1.0) > tolerance) {
      bad.push_back(std::size_t(i));
    }
  }
  return bad;
}

SmoothedMatrix ndls_smooth_labels(const PropagationOperator& op,
                                  const Matrix& soft_labels,
                                  const LsiVector& lsi) {
  check_rows(op, soft_labels, "ndls_smooth_labels");
  auto bad = invalid_probability_rows(soft_labels);
  if (!bad.empty()) {
    std::string msg = "soft labels are not probability rows at " +
                      std::to_string(bad.size()) + " nodes (first: " +
                      std::to_string(bad.front()) + ")";
    throw ValidationError(msg, std::move(bad));
  }
  // Label influence equals feature influence, so the feature path is reused.
  return ndls_smooth(op, soft_labels, lsi);
}

SmoothedMatrix sgc_smooth(const PropagationOperator& op, const Matrix& x,
                          std::uint32_t k) {
  check_rows(op, x, "sgc_smooth");
  SmoothedMatrix out;
  out.values = x;
  Matrix next;
  for (std::uint32_t step = 0; step < k; ++step) {
    op.propagate_into(out.values, next);
    out.values.swap(next);
  }
  out.provenance.kernel = SmoothingKernel::kSgc;
  out.provenance.r = op.r();
  out.provenance.k = k;
  out.provenance.max_lsi = k;
  return out;
}

SmoothedMatrix s2gc_smooth(const PropagationOperator& op, const Matrix& x,
                           std::uint32_t k) {
  check_rows(op, x, "s2gc_smooth");
  const std::vector<std::uint32_t> depth(op.num_nodes(), k);
  SmoothedMatrix out;
  out.values = local_average(op, x, depth);
  out.provenance.kernel = SmoothingKernel::kS2gc;
  out.provenance.r = op.r();
  out.provenance.k = k;
  out.provenance.max_lsi = k;
  return out;
}

}  // namespace ndls
