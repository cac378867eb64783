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

#include "ndls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ndls/errors.hpp"

namespace ndls {

double SpectralInfo::rate() const {
  return std::max(lambda2, std::abs(lambda_min));
}

namespace {

// Symmetric normalized adjacency of one component in local indexing.
struct LocalComponent {
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> values;
  Eigen::VectorXd top;  // unit eigenvector for eigenvalue 1: sqrt(d~)

  std::size_t size() const { return offsets.size() - 1; }

  // y = (S + sign * I) x / 2 with the top eigenvector projected out.
  void apply_shifted(const Eigen::VectorXd& x, double sign,
                     Eigen::VectorXd& y) const {
    const std::size_t n = size();
    y.resize(Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t e = offsets[i]; e < offsets[i + 1]; ++e) {
        acc += values[e] * x[Eigen::Index(cols[e])];
      }
      y[Eigen::Index(i)] = 0.5 * (sign * acc + x[Eigen::Index(i)]);
    }
    y -= top.dot(y) * top;
  }
};

LocalComponent extract(const Graph& graph, std::size_t component) {
  const std::size_t n = graph.num_nodes();
  const auto comp = graph.component_id();
  std::vector<std::size_t> local(n, static_cast<std::size_t>(-1));
  std::vector<NodeId> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] == component) {
      local[i] = members.size();
      members.push_back(NodeId(i));
    }
  }
  LocalComponent lc;
  lc.top.resize(Eigen::Index(members.size()));
  double norm = 0.0;
  for (std::size_t a = 0; a < members.size(); ++a) {
    const NodeId i = members[a];
    const double di = double(graph.degree_tilde(i));
    for (NodeId j : graph.row(i)) {
      lc.cols.push_back(local[j]);
      lc.values.push_back(1.0 / std::sqrt(di * double(graph.degree_tilde(j))));
    }
    lc.offsets.push_back(lc.cols.size());
    lc.top[Eigen::Index(a)] = std::sqrt(di);
    norm += di;
  }
  lc.top /= std::sqrt(norm);
  return lc;
}

// Largest eigenvalue of the deflated, shifted operator via power iteration
// with Rayleigh-quotient estimates.
double power_iterate(const LocalComponent& lc, double sign,
                     const SpectralOptions& options, std::size_t& iterations) {
  const std::size_t n = lc.size();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[Eigen::Index(i)] = normal(rng);
  v -= lc.top.dot(v) * lc.top;
  const double start_norm = v.norm();
  if (start_norm == 0.0) return 0.0;
  v /= start_norm;

  Eigen::VectorXd w;
  double residual = 0.0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    lc.apply_shifted(v, sign, w);
    const double mu = v.dot(w);
    residual = (w - mu * v).norm();
    iterations = it;
    if (residual <= options.tolerance) return mu;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
  }
  throw ConvergenceError("power iteration did not converge within " +
                             std::to_string(options.max_iterations) +
                             " iterations",
                         residual);
}

}  // namespace

SpectralInfo second_eigenvalue(const Graph& graph,
                               const SpectralOptions& options) {
  SpectralInfo info;
  if (graph.num_nodes() == 0) return info;
  info.component = graph.largest_component();
  const LocalComponent lc = extract(graph, info.component);
  const std::size_t n = lc.size();
  info.component_size = n;
  if (n == 1) {
    // The only eigenvalue is the stationary one.
    info.method = "dense";
    return info;
  }

  const bool dense = options.method == EigenMethod::kDense ||
                     (options.method == EigenMethod::kAuto &&
                      n <= options.dense_limit);
  if (dense) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t e = lc.offsets[i]; e < lc.offsets[i + 1]; ++e) {
        s(Eigen::Index(i), Eigen::Index(lc.cols[e])) = lc.values[e];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("dense symmetric eigensolve failed", 0.0);
    }
    const auto& ev = solver.eigenvalues();  // ascending
    info.lambda2 = ev[Eigen::Index(n) - 2];
    info.lambda_min = ev[0];
    info.method = "dense";
    return info;
  }

  std::size_t it_hi = 0, it_lo = 0;
  // (S + I)/2 has spectrum (1 + lambda)/2, so its top deflated eigenvalue
  // gives the signed lambda2; (I - S)/2 does the same for lambda_min.
  const double mu_hi = power_iterate(lc, +1.0, options, it_hi);
  const double mu_lo = power_iterate(lc, -1.0, options, it_lo);
  info.lambda2 = 2.0 * mu_hi - 1.0;
  info.lambda_min = 1.0 - 2.0 * mu_lo;
  info.method = "power";
  info.iterations = it_hi + it_lo;
  return info;
}

SpectralInfo second_eigenvalue(const PropagationOperator& op,
                               const SpectralOptions& options) {
  return second_eigenvalue(op.graph(), options);
}

}  // namespace ndls
