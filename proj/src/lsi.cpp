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

#include "ndls/lsi.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "binary_io.hpp"
#include "ndls/errors.hpp"

namespace ndls {

std::string to_string(LsiMethod method) {
  return method == LsiMethod::kExact ? "exact" : "sketch";
}

LsiMethod lsi_method_from_string(const std::string& name) {
  if (name == "exact") return LsiMethod::kExact;
  if (name == "sketch") return LsiMethod::kSketch;
  throw ConfigError("unknown LSI method '" + name + "'");
}

std::uint32_t LsiVector::max_value() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

namespace {

void check_epsilons(std::span<const double> epsilons) {
  if (epsilons.empty()) throw ConfigError("LSI needs at least one epsilon");
  for (double eps : epsilons) {
    if (!(eps > 0.0)) {
      throw DomainError("epsilon must be positive, got " + std::to_string(eps));
    }
  }
}

// First-crossing bookkeeping shared by the exact and sketch paths.
class CrossingTracker {
 public:
  CrossingTracker(std::size_t n, std::span<const double> epsilons)
      : epsilons_(epsilons.begin(), epsilons.end()),
        k_(epsilons.size(), std::vector<std::uint32_t>(n, kUnset)) {}

  // Records step k for node i given its squared distance; returns true once
  // the node has crossed every epsilon.
  bool record(std::size_t i, std::uint32_t k, double dist_sq) {
    bool done = true;
    for (std::size_t e = 0; e < epsilons_.size(); ++e) {
      if (k_[e][i] != kUnset) continue;
      if (dist_sq < epsilons_[e] * epsilons_[e]) {
        k_[e][i] = k;
      } else {
        done = false;
      }
    }
    return done;
  }

  bool done(std::size_t i) const {
    for (const auto& ks : k_) {
      if (ks[i] == kUnset) return false;
    }
    return true;
  }

  std::vector<LsiVector> finish(const PropagationOperator& op,
                                std::uint32_t k_max, LsiMethod method,
                                std::size_t probes) {
    std::vector<LsiVector> out;
    for (std::size_t e = 0; e < epsilons_.size(); ++e) {
      LsiVector lsi;
      lsi.epsilon = epsilons_[e];
      lsi.k_max = k_max;
      lsi.r = op.r();
      lsi.method = method;
      lsi.probes = probes;
      lsi.low_confidence =
          method == LsiMethod::kSketch && probes < kMinConfidentProbes;
      lsi.values = std::move(k_[e]);
      for (std::size_t i = 0; i < lsi.values.size(); ++i) {
        if (lsi.values[i] == kUnset) {
          lsi.values[i] = k_max;
          lsi.capped_nodes.push_back(NodeId(i));
        }
      }
      out.push_back(std::move(lsi));
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kUnset =
      std::numeric_limits<std::uint32_t>::max();
  std::vector<double> epsilons_;
  std::vector<std::vector<std::uint32_t>> k_;
};

// Squared distance of column `c` of `y` (an influence row laid out along the
// matrix rows) to the stationary row of `node`.
double column_distance_squared(const Matrix& y, Eigen::Index c, NodeId node,
                               const StationaryModel& stationary,
                               std::span<const std::size_t> component) {
  const std::size_t g = component[node];
  const double scale = stationary.left(node) / stationary.denominator(node);
  double acc = 0.0;
  const Eigen::Index n = y.rows();
  for (Eigen::Index l = 0; l < n; ++l) {
    const double target =
        component[std::size_t(l)] == g ? scale * stationary.right(NodeId(l))
                                       : 0.0;
    const double diff = y(l, c) - target;
    acc += diff * diff;
  }
  return acc;
}

}  // namespace

InfluenceRow influence_row(const PropagationOperator& op, NodeId i,
                           std::size_t k) {
  const std::size_t n = op.num_nodes();
  if (i >= n) throw BoundsError("influence_row: node out of range");
  Matrix y = Matrix::Zero(Eigen::Index(n), 1);
  y(Eigen::Index(i), 0) = 1.0;
  Matrix next;
  for (std::size_t step = 0; step < k; ++step) {
    op.propagate_transpose_into(y, next);
    y.swap(next);
  }
  InfluenceRow row;
  row.node = i;
  row.k = k;
  row.values.assign(y.data(), y.data() + n);
  return row;
}

double influence_distance(const PropagationOperator& op, NodeId i,
                          std::size_t k) {
  const StationaryModel stationary(op);
  const auto row = influence_row(op, i, k);
  const auto target = stationary.row(i);
  double acc = 0.0;
  for (std::size_t j = 0; j < target.size(); ++j) {
    const double diff = row.values[j] - target[j];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

std::vector<LsiVector> compute_lsi_exact(const PropagationOperator& op,
                                         std::span<const double> epsilons,
                                         std::uint32_t k_max,
                                         const ExactLsiOptions& options) {
  check_epsilons(epsilons);
  const std::size_t n = op.num_nodes();
  const std::size_t batch = std::max<std::size_t>(1, options.batch);
  const StationaryModel stationary(op);
  const auto component = op.graph().component_id();
  CrossingTracker tracker(n, epsilons);

  const std::ptrdiff_t num_batches =
      static_cast<std::ptrdiff_t>((n + batch - 1) / batch);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < num_batches; ++b) {
    const std::size_t first = std::size_t(b) * batch;
    const std::size_t last = std::min(n, first + batch);
    std::vector<NodeId> active;
    for (std::size_t i = first; i < last; ++i) active.push_back(NodeId(i));

    Matrix y = Matrix::Zero(Eigen::Index(n), Eigen::Index(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c) {
      y(Eigen::Index(active[c]), Eigen::Index(c)) = 1.0;
    }
    Matrix next;
    for (std::uint32_t k = 0;; ++k) {
      std::vector<NodeId> still;
      std::vector<Eigen::Index> keep;
      for (std::size_t c = 0; c < active.size(); ++c) {
        const double d2 = column_distance_squared(y, Eigen::Index(c),
                                                  active[c], stationary,
                                                  component);
        if (!tracker.record(active[c], k, d2)) {
          still.push_back(active[c]);
          keep.push_back(Eigen::Index(c));
        }
      }
      if (still.empty() || k == k_max) break;
      // Finished columns ride along until at least half the batch is done.
      if (still.size() * 2 <= active.size()) {
        Matrix packed(y.rows(), Eigen::Index(keep.size()));
        for (std::size_t c = 0; c < keep.size(); ++c) {
          packed.col(Eigen::Index(c)) = y.col(keep[c]);
        }
        y.swap(packed);
        active.swap(still);
      }
      op.propagate_transpose_into(y, next);
      y.swap(next);
    }
  }
  return tracker.finish(op, k_max, LsiMethod::kExact, 0);
}

LsiVector compute_lsi_exact(const PropagationOperator& op, double epsilon,
                            std::uint32_t k_max) {
  const double eps[] = {epsilon};
  return std::move(compute_lsi_exact(op, eps, k_max).front());
}

namespace {

Matrix gaussian_probes(std::size_t n, std::size_t probes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0,
                                          1.0 / std::sqrt(double(probes)));
  Matrix z(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(probes));
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(i, c) = normal(rng);
  }
  return z;
}

}  // namespace

std::vector<LsiVector> compute_lsi_sketch(const PropagationOperator& op,
                                          std::span<const double> epsilons,
                                          std::uint32_t k_max,
                                          std::size_t probes,
                                          std::uint64_t seed) {
  check_epsilons(epsilons);
  if (probes < 1) throw ConfigError("sketch needs at least one probe");
  const std::size_t n = op.num_nodes();
  const StationaryModel stationary(op);
  CrossingTracker tracker(n, epsilons);

  // A^^k A^inf = A^inf, so the residual obeys R_{k+1} = A^ R_k.
  Matrix residual = gaussian_probes(n, probes, seed);
  residual -= stationary.apply(residual);
  Matrix next;
  for (std::uint32_t k = 0;; ++k) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (tracker.done(i)) continue;
      const double d2 = residual.row(Eigen::Index(i)).squaredNorm();
      all_done = tracker.record(i, k, d2) && all_done;
    }
    if (all_done || k == k_max) break;
    op.propagate_into(residual, next);
    residual.swap(next);
  }
  return tracker.finish(op, k_max, LsiMethod::kSketch, probes);
}

LsiVector compute_lsi_sketch(const PropagationOperator& op, double epsilon,
                             std::uint32_t k_max, std::size_t probes,
                             std::uint64_t seed) {
  const double eps[] = {epsilon};
  return std::move(compute_lsi_sketch(op, eps, k_max, probes, seed).front());
}

std::vector<double> sketch_distances(const PropagationOperator& op,
                                     std::size_t k, std::size_t probes,
                                     std::uint64_t seed) {
  if (probes < 1) throw ConfigError("sketch needs at least one probe");
  const StationaryModel stationary(op);
  Matrix residual = gaussian_probes(op.num_nodes(), probes, seed);
  residual -= stationary.apply(residual);
  Matrix next;
  for (std::size_t step = 0; step < k; ++step) {
    op.propagate_into(residual, next);
    residual.swap(next);
  }
  std::vector<double> out(op.num_nodes());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = residual.row(Eigen::Index(i)).norm();
  }
  return out;
}

std::vector<LsiVector> compute_lsi(const PropagationOperator& op,
                                   std::span<const double> epsilons,
                                   std::uint32_t k_max,
                                   const LsiOptions& options) {
  using Mode = LsiOptions::Mode;
  const bool exact =
      options.mode == Mode::kExact ||
      (options.mode == Mode::kAuto && op.num_nodes() <= kExactNodeLimit);
  if (exact) return compute_lsi_exact(op, epsilons, k_max);
  return compute_lsi_sketch(op, epsilons, k_max, options.probes, options.seed);
}

LsiVector constant_lsi(std::size_t n, std::uint32_t k) {
  LsiVector lsi;
  lsi.values.assign(n, k);
  lsi.k_max = k;
  return lsi;
}

void write_lsi_csv(const LsiVector& lsi, std::ostream& out) {
  out << "node_id,k\n";
  for (std::size_t i = 0; i < lsi.values.size(); ++i) {
    out << i << ',' << lsi.values[i] << '\n';
  }
}

void save_lsi_csv(const LsiVector& lsi, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write LSI csv: " + path);
  write_lsi_csv(lsi, out);
}

LsiVector load_lsi_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open LSI csv: " + path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("node_id,k", 0) != 0) {
    throw ParseError(path, line_no, "expected header 'node_id,k'");
  }
  LsiVector lsi;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream fields(line);
    std::size_t node = 0;
    char comma = 0;
    std::int64_t k = 0;
    if (!(fields >> node >> comma >> k) || comma != ',' || k < 0) {
      throw ParseError(path, line_no, "expected 'node_id,k'");
    }
    if (node != lsi.values.size()) {
      throw ParseError(path, line_no, "node ids must be listed 0..n-1");
    }
    lsi.values.push_back(std::uint32_t(k));
  }
  lsi.k_max = lsi.max_value();
  return lsi;
}

void save_lsi_binary(const LsiVector& lsi, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write LSI sidecar: " + path);
  out.write("NDLSLSI1", 8);
  detail::write_le<std::uint64_t>(out, lsi.values.size());
  detail::write_le<double>(out, lsi.epsilon);
  detail::write_le<double>(out, lsi.r);
  detail::write_le<std::uint32_t>(out, lsi.k_max);
  detail::write_le<std::uint32_t>(out, lsi.method == LsiMethod::kExact ? 0 : 1);
  detail::write_le<std::uint64_t>(out, lsi.probes);
  detail::write_le<std::uint64_t>(out, lsi.capped_nodes.size());
  for (auto v : lsi.values) detail::write_le<std::uint32_t>(out, v);
  for (auto v : lsi.capped_nodes) detail::write_le<std::uint32_t>(out, v);
  if (!out) throw IoError("write failed: " + path);
}

LsiVector load_lsi_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open LSI sidecar: " + path);
  detail::expect_magic(in, "NDLSLSI1", path);
  LsiVector lsi;
  const auto n = detail::read_le<std::uint64_t>(in, path);
  lsi.epsilon = detail::read_le<double>(in, path);
  lsi.r = detail::read_le<double>(in, path);
  lsi.k_max = detail::read_le<std::uint32_t>(in, path);
  lsi.method = detail::read_le<std::uint32_t>(in, path) == 0
                   ? LsiMethod::kExact
                   : LsiMethod::kSketch;
  lsi.probes = detail::read_le<std::uint64_t>(in, path);
  lsi.low_confidence =
      lsi.method == LsiMethod::kSketch && lsi.probes < kMinConfidentProbes;
  const auto capped = detail::read_le<std::uint64_t>(in, path);
  lsi.values.resize(n);
  for (auto& v : lsi.values) v = detail::read_le<std::uint32_t>(in, path);
  lsi.capped_nodes.resize(capped);
  for (auto& v : lsi.capped_nodes) v = detail::read_le<std::uint32_t>(in, path);
  return lsi;
}

}  // namespace ndls
