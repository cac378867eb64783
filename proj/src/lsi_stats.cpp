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

#include "ndls/lsi_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ndls/errors.hpp"

namespace ndls {

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * double(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman_correlation(const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("spearman: length mismatch");
  if (x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = double(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

LsiStats lsi_statistics(const LsiVector& lsi, const Graph& graph) {
  const std::size_t n = lsi.values.size();
  if (n != graph.num_nodes()) {
    throw ShapeError("lsi_statistics: LSI and graph sizes differ");
  }
  LsiStats stats;
  if (n == 0) return stats;

  std::map<std::uint32_t, std::size_t> histogram;
  std::map<std::size_t, std::pair<double, std::size_t>> buckets;
  std::vector<double> degree(n), k(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = graph.degree_tilde(NodeId(i));
    ++histogram[lsi.values[i]];
    auto& b = buckets[d];
    b.first += lsi.values[i];
    ++b.second;
    degree[i] = double(d);
    k[i] = double(lsi.values[i]);
    total += k[i];
  }

  std::size_t running = 0;
  for (const auto& [value, count] : histogram) {
    running += count;
    stats.cdf.push_back({value, running == n ? 1.0 : double(running) / n});
  }
  for (const auto& [d, b] : buckets) {
    stats.by_degree.push_back({d, b.first / double(b.second), b.second});
  }
  stats.spearman = spearman_correlation(degree, k);
  stats.mean_k = total / double(n);
  stats.max_k = lsi.max_value();
  return stats;
}

}  // namespace ndls
