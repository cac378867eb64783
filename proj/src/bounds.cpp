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

#include "ndls/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ndls/errors.hpp"

namespace ndls {

std::optional<double> spectral_lsi_bound(const Graph& graph, double lambda,
                                      double epsilon, NodeId i) {
  if (i >= graph.num_nodes()) throw BoundsError("spectral_lsi_bound: bad node");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(lambda >= 0.0 && lambda < 1.0)) return std::nullopt;
  const double volume = double(graph.component_of(i).volume());
  const double arg =
      epsilon * std::sqrt(double(graph.degree_tilde(i)) / volume);
  if (arg >= 1.0) return std::nullopt;
  if (lambda == 0.0) return 1.0;
  return std::log(arg) / std::log(lambda);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kSpectral:
      return "spectral";
    case BoundKind::kNeighbor:
      return "neighbor";
    case BoundKind::kUnion:
      return "union";
  }
  return "unknown";
}

std::size_t BoundReport::count(BoundKind kind) const {
  return std::size_t(std::count_if(
      violations.begin(), violations.end(),
      [kind](const BoundViolation& v) { return v.kind == kind; }));
}

BoundReport check_bounds(const LsiVector& lsi, const Graph& graph,
                         const SpectralInfo& spectral) {
  const std::size_t n = graph.num_nodes();
  if (lsi.values.size() != n) {
    throw ShapeError("check_bounds: LSI has " +
                     std::to_string(lsi.values.size()) + " entries, graph " +
                     std::to_string(n));
  }
  if (lsi.method != LsiMethod::kExact) {
    throw ValidationError("check_bounds requires exact LSI", {});
  }
  if (lsi.r != 0.0) {
    throw ValidationError("check_bounds requires LSI computed with r = 0", {});
  }
  if (!lsi.capped_nodes.empty()) {
    std::vector<std::size_t> nodes(lsi.capped_nodes.begin(),
                                   lsi.capped_nodes.end());
    throw ValidationError("check_bounds refused: " +
                              std::to_string(nodes.size()) +
                              " nodes hit k_max",
                          std::move(nodes));
  }

  BoundReport report;
  report.epsilon = lsi.epsilon;
  report.lambda2 = spectral.lambda2;
  report.lambda_min = spectral.lambda_min;
  report.rate = spectral.rate();
  report.spectral.assign(n, std::numeric_limits<double>::quiet_NaN());
  report.neighbor.assign(n, -1);
  report.union_bound.assign(n, -1);

  for (std::size_t i = 0; i < n; ++i) {
    const auto node = NodeId(i);
    const std::uint32_t k = lsi.values[i];

    if (auto b = spectral_lsi_bound(graph, report.rate, lsi.epsilon, node)) {
      report.spectral[i] = *b;
      if (double(k) > std::ceil(*b)) {
        report.violations.push_back({node, BoundKind::kSpectral, k, *b});
      }
    }

    std::int64_t best = -1;
    for (NodeId j : graph.row(node)) {
      if (j == node) continue;
      best = std::max<std::int64_t>(best, lsi.values[j]);
    }
    if (best >= 0) {
      report.neighbor[i] = best + 1;
      if (std::int64_t(k) > best + 1) {
        report.violations.push_back(
            {node, BoundKind::kNeighbor, k, double(best + 1)});
      }
    }

    std::int64_t combined = report.neighbor[i];
    if (!std::isnan(report.spectral[i])) {
      const auto s = std::int64_t(std::ceil(std::max(0.0, report.spectral[i])));
      combined = combined < 0 ? s : std::min(combined, s);
    }
    report.union_bound[i] = combined;
    if (combined >= 0 && std::int64_t(k) > combined) {
      report.violations.push_back(
          {node, BoundKind::kUnion, k, double(combined)});
    }
  }
  return report;
}

}  // namespace ndls
