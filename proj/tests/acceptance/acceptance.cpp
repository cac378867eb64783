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

// Acceptance checks. Prints one PASS / FAIL / SKIP line per criterion and
// exits non-zero if any criterion fails. Data-dependent criteria run only
// when NDLS_PLANETOID_DIR points at converted Planetoid datasets; the
// million-node sketch run needs NDLS_SCALE_CHECK=1.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ndls/bounds.hpp"
#include "ndls/errors.hpp"
#include "ndls/lsi.hpp"
#include "ndls/lsi_stats.hpp"
#include "ndls/model.hpp"
#include "ndls/pipeline.hpp"
#include "ndls/propagation.hpp"
#include "ndls/smoothing.hpp"
#include "ndls/spectral.hpp"
#include "ndls/sparsity.hpp"
#include "ndls/synthetic.hpp"
#include "oracle.hpp"

using namespace ndls;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes, fixed here.
constexpr std::size_t kBoundGraphs = 50;
constexpr std::size_t kBoundMaxNodes = 200;
constexpr std::uint32_t kBoundKMax = 20000;
constexpr double kStationaryTol = 1e-5;
constexpr std::size_t kStationaryPower = 5000;
constexpr double kMatrixFormTol = 1e-10;
constexpr std::size_t kMatrixFormTriples = 20;
constexpr std::size_t kSketchProbes = 256;
constexpr double kSketchShare = 0.95;
constexpr double kGradTol = 1e-4;
constexpr std::size_t kPlanetoidSeeds = 10;

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const Result& r) {
  const char* tag = r.outcome == Outcome::kPass   ? "PASS"
                    : r.outcome == Outcome::kFail ? "FAIL"
                                                  : "SKIP";
  if (r.outcome == Outcome::kFail) ++failures;
  std::printf("[%s] %-3s %s: %s\n", tag, id, title, r.detail.c_str());
  std::fflush(stdout);
}

void run(const char* id, const char* title, const std::function<Result()>& f) {
  try {
    report(id, title, f());
  } catch (const std::exception& e) {
    report(id, title, {Outcome::kFail, std::string("exception: ") + e.what()});
  }
}

std::string fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

// Half Erdos-Renyi (patched to be connected), half preferential attachment.
std::vector<Graph> bound_graphs() {
  std::vector<Graph> out;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(20, kBoundMaxNodes);
  for (std::size_t t = 0; t < kBoundGraphs; ++t) {
    const std::size_t n = size(rng);
    if (t % 2 == 0) {
      const double p = (1.5 + double(t % 5)) / double(n);
      out.push_back(connect_components(erdos_renyi(n, p, t), t + 1000));
    } else {
      out.push_back(barabasi_albert(n, 1 + t % 3, t));
    }
  }
  return out;
}

struct BoundTally {
  std::size_t checks = 0;
  std::size_t spectral = 0;
  std::size_t neighbor = 0;
  std::size_t union_bound = 0;
  std::size_t graphs_with_neighbor = 0;
};

const BoundTally& bound_tally() {
  static const BoundTally tally = [] {
    BoundTally t;
    const std::vector<double> eps{0.01, 0.03, 0.05};
    for (const Graph& g : bound_graphs()) {
      const SpectralInfo info = second_eigenvalue(g);
      const auto all = compute_lsi_exact(build_operator(g, 0.0), eps, kBoundKMax);
      bool hit = false;
      for (const auto& lsi : all) {
        const BoundReport rep = check_bounds(lsi, g, info);
        t.checks += g.num_nodes();
        t.spectral += rep.count(BoundKind::kSpectral);
        t.neighbor += rep.count(BoundKind::kNeighbor);
        t.union_bound += rep.count(BoundKind::kUnion);
        hit = hit || rep.count(BoundKind::kNeighbor) > 0;
      }
      t.graphs_with_neighbor += hit;
    }
    return t;
  }();
  return tally;
}

Result criterion_spectral_bound() {
  const auto& t = bound_tally();
  return {t.spectral == 0 ? Outcome::kPass : Outcome::kFail,
          std::to_string(t.spectral) + " violations over " +
              std::to_string(t.checks) + " (node, eps) checks on " +
              std::to_string(kBoundGraphs) + " graphs"};
}

Result criterion_neighbor_bound() {
  const auto& t = bound_tally();
  // Smallest case: path 1-0-2 centred on the hub.
  const Graph star = star_graph(2);
  const auto lsi = compute_lsi_exact(build_operator(star, 0.0), 0.01, 100);
  std::string detail = std::to_string(t.neighbor) + " neighbor and " +
                       std::to_string(t.union_bound) + " union violations over " +
                       std::to_string(t.checks) + " checks (" +
                       std::to_string(t.graphs_with_neighbor) + "/" +
                       std::to_string(kBoundGraphs) +
                       " graphs); three-node star at eps=0.01 has K=[" +
                       std::to_string(lsi.values[0]) + "," +
                       std::to_string(lsi.values[1]) + "," +
                       std::to_string(lsi.values[2]) + "]";
  return {t.neighbor == 0 && t.union_bound == 0 ? Outcome::kPass : Outcome::kFail,
          detail};
}

Result criterion_stationarity() {
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 20 + 10 * seed;  // up to 90
    const Graph g = seed % 2 ? barabasi_albert(n, 2, seed)
                             : connect_components(erdos_renyi(n, 3.0 / double(n), seed), seed);
    for (double r : {0.0, 0.5, 1.0}) {
      const oracle::Dense p = oracle::power(oracle::dense_operator(g, r), kStationaryPower);
      const StationaryModel s(g, r);
      for (NodeId i = 0; i < n; ++i) {
        const auto row = s.row(i);
        for (NodeId j = 0; j < n; ++j) worst = std::max(worst, std::abs(row[j] - p(i, j)));
      }
      ++cases;
    }
  }
  return {worst < kStationaryTol ? Outcome::kPass : Outcome::kFail,
          fmt("max entry error %.3g over %g (graph, r) cases", worst, double(cases))};
}

Result criterion_matrix_form() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < kMatrixFormTriples; ++seed) {
    const std::size_t n = 30 + 7 * seed;
    const Graph g = seed % 2 ? barabasi_albert(n, 2, seed)
                             : connect_components(erdos_renyi(n, 0.08, seed), seed);
    const auto op = build_operator(g, 0.25 * double(seed % 5));
    const Matrix x = oracle::random_matrix(Eigen::Index(n), 4, seed + 77);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, 12);
    LsiVector lsi;
    lsi.values.resize(n);
    for (auto& k : lsi.values) k = pick(rng);
    const MWeights m = build_m_weights(lsi);
    Matrix sum = Matrix::Zero(x.rows(), x.cols());
    Matrix ak = x;
    for (std::size_t k = 0; k < m.depth(); ++k) {
      for (Eigen::Index i = 0; i < x.rows(); ++i) sum.row(i) += m.diagonals[k][i] * ak.row(i);
      ak = op.propagate(ak);
    }
    worst = std::max(worst, (ndls_smooth(op, x, lsi).values - sum).cwiseAbs().maxCoeff());
  }
  return {worst < kMatrixFormTol ? Outcome::kPass : Outcome::kFail,
          fmt("max abs difference %.3g over %g triples", worst, double(kMatrixFormTriples))};
}

Result criterion_label_identity() {
  std::size_t identical = 0;
  const std::size_t cases = 10;
  for (std::uint64_t seed = 0; seed < cases; ++seed) {
    const Graph g = barabasi_albert(150, 2, seed);
    const auto op = build_operator(g, 0.5 * double(seed % 3));
    Matrix y = oracle::random_matrix(150, 6, seed).cwiseAbs();
    for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) /= y.row(i).sum();
    const auto lsi = compute_lsi_exact(op, 0.03, 40);
    const Matrix a = ndls_smooth_labels(op, y, lsi).values;
    const Matrix b = ndls_smooth(op, y, lsi).values;
    identical += std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
  }
  return {identical == cases ? Outcome::kPass : Outcome::kFail,
          std::to_string(identical) + "/" + std::to_string(cases) +
              " cases bit-identical"};
}

Result criterion_sketch() {
  double min_share = 1.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = seed % 2 ? barabasi_albert(200, 2, seed)
                             : connect_components(erdos_renyi(200, 0.02, seed), seed);
    const auto op = build_operator(g, 0.0);
    const auto exact = compute_lsi_exact(op, 0.05, 500);
    const auto sketch = compute_lsi_sketch(op, 0.05, 500, kSketchProbes, seed);
    std::size_t close = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      close += std::abs(std::int64_t(exact.values[i]) - std::int64_t(sketch.values[i])) <= 1;
    }
    min_share = std::min(min_share, double(close) / double(exact.size()));
  }
  return {min_share >= kSketchShare ? Outcome::kPass : Outcome::kFail,
          fmt("worst seed has %.1f%% of nodes within +-1", 100.0 * min_share)};
}

Result criterion_gradient() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    MlpHyper h;
    h.hidden = 16;
    h.seed = seed;
    const MlpModel m = init_mlp(10, 4, h);
    const Matrix x = oracle::random_matrix(40, 10, seed + 9);
    std::vector<int> y(40);
    for (int i = 0; i < 40; ++i) y[i] = (i * 7 + int(seed)) % 4;
    GradCheckOptions opts;
    opts.samples_per_tensor = 40;
    opts.seed = seed;
    worst = std::max(worst, gradient_check(m, x, y, opts));
  }
  return {worst < kGradTol ? Outcome::kPass : Outcome::kFail,
          fmt("max relative error %.3g", worst)};
}

Result criterion_degree_correlation() {
  const Graph g = barabasi_albert(1000, 2, 42);
  const auto lsi = compute_lsi_exact(build_operator(g, 0.0), 0.03, 2000);
  const LsiStats s = lsi_statistics(lsi, g);
  return {s.spearman < 0.0 ? Outcome::kPass : Outcome::kFail,
          fmt("spearman(degree, K) = %.4f, mean K %.2f", s.spearman, s.mean_k)};
}

// Planetoid data converted to this project's formats:
//   <dir>/<name>/{edges.txt, features.bin, labels.txt, train.txt, val.txt, test.txt}
std::optional<Dataset> planetoid(const std::string& name) {
  const char* root = std::getenv("NDLS_PLANETOID_DIR");
  if (!root) return std::nullopt;
  const fs::path dir = fs::path(root) / name;
  if (!fs::exists(dir / "edges.txt")) return std::nullopt;
  PipelineConfig c;
  c.edges = (dir / "edges.txt").string();
  c.features = (dir / (fs::exists(dir / "features.bin") ? "features.bin" : "features.csv")).string();
  c.labels = (dir / "labels.txt").string();
  c.train = (dir / "train.txt").string();
  c.val = (dir / "val.txt").string();
  c.test = (dir / "test.txt").string();
  return load_dataset(c);
}

struct MeanAccuracy {
  double mlp = 0, ndls_f = 0, mlp_l = 0, ndls = 0;
};

MeanAccuracy seeded_mean(const Dataset& d, std::size_t seeds,
                         const std::function<Dataset(std::uint64_t)>& variant = {}) {
  MeanAccuracy m;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    PipelineConfig c;
    c.seed = s;
    const RunReport r = run_pipeline(variant ? variant(s) : d, c);
    m.mlp += r.mlp.test_accuracy / double(seeds);
    m.ndls_f += r.ndls_f_mlp.test_accuracy / double(seeds);
    m.mlp_l += r.mlp_ndls_l.test_accuracy / double(seeds);
    m.ndls += r.ndls.test_accuracy / double(seeds);
  }
  return m;
}

const MeanAccuracy* cora_means() {
  static const std::optional<MeanAccuracy> m = []() -> std::optional<MeanAccuracy> {
    const auto d = planetoid("cora");
    if (!d) return std::nullopt;
    return seeded_mean(*d, kPlanetoidSeeds);
  }();
  return m ? &*m : nullptr;
}

const Result kNoData{Outcome::kSkip, "NDLS_PLANETOID_DIR not set or dataset missing"};

Result criterion_cora() {
  const MeanAccuracy* m = cora_means();
  if (!m) return kNoData;
  const bool ok = m->ndls >= 0.835 && m->mlp >= 0.58 && m->mlp <= 0.64 && m->ndls_f >= 0.830;
  return {ok ? Outcome::kPass : Outcome::kFail,
          fmt("ndls %.4f (>= 0.835), mlp %.4f (in [0.58, 0.64]), ndls-f+mlp %.4f (>= 0.830)",
              m->ndls, m->mlp, m->ndls_f)};
}

Result criterion_citeseer_pubmed() {
  const auto cs = planetoid("citeseer");
  const auto pm = planetoid("pubmed");
  if (!cs || !pm) return kNoData;
  const double a = seeded_mean(*cs, kPlanetoidSeeds).ndls;
  const double b = seeded_mean(*pm, kPlanetoidSeeds).ndls;
  return {a >= 0.725 && b >= 0.803 ? Outcome::kPass : Outcome::kFail,
          fmt("citeseer ndls %.4f (>= 0.725), pubmed ndls %.4f (>= 0.803)", a, b)};
}

Result criterion_ablation_gaps() {
  const MeanAccuracy* m = cora_means();
  if (!m) return kNoData;
  const double f = m->ndls_f - m->mlp;
  const double l = m->mlp_l - m->mlp;
  return {f >= 0.15 && l >= 0.15 ? Outcome::kPass : Outcome::kFail,
          fmt("ndls-f+mlp gain %.4f, mlp+ndls-l gain %.4f (both >= 0.15)", f, l)};
}

Result criterion_label_sparsity() {
  const auto pm = planetoid("pubmed");
  if (!pm) return kNoData;
  const Dataset& d = *pm;
  const MeanAccuracy m = seeded_mean(d, kPlanetoidSeeds, [&](std::uint64_t s) {
    Dataset v = d;
    v.splits = subsample_labels(d.splits, d.labels, 5, s);
    return v;
  });
  return {m.ndls - m.mlp >= 0.05 ? Outcome::kPass : Outcome::kFail,
          fmt("ndls %.4f vs mlp %.4f at 5 labels per class (gap >= 0.05)", m.ndls, m.mlp)};
}

Result criterion_scale() {
  const char* flag = std::getenv("NDLS_SCALE_CHECK");
  if (!flag || std::string(flag) != "1") {
    return {Outcome::kSkip, "set NDLS_SCALE_CHECK=1 to run the 10^6-node sketch"};
  }
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = 1'000'000;
  const Graph g = erdos_renyi(n, 2e-5, 1);  // about 10^7 edges
  const auto op = build_operator(g, 0.5);
  const auto lsi = compute_lsi_sketch(op, 0.05, 200, 64, 1);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = double(usage.ru_maxrss) / (1024.0 * 1024.0);
  return {peak_gb < 8.0 ? Outcome::kPass : Outcome::kFail,
          fmt("m = %.3g, max K %g, %.0f s, peak RSS %.2f GB (< 8)", double(g.num_edges()),
              double(lsi.max_value()), secs, peak_gb)};
}

}  // namespace

int main() {
  run("1", "spectral LSI bound", criterion_spectral_bound);
  run("2", "neighbor and union LSI bounds", criterion_neighbor_bound);
  run("3", "stationary closed form vs 5000th power", criterion_stationarity);
  run("4", "matrix form equals streaming smoothing", criterion_matrix_form);
  run("5", "label and feature paths bit-identical", criterion_label_identity);
  run("6", "sketch LSI within +-1 of exact", criterion_sketch);
  run("7", "MLP gradient check", criterion_gradient);
  run("8", "degree and LSI negatively correlated", criterion_degree_correlation);
  run("9", "Cora accuracy", criterion_cora);
  run("10", "Citeseer and PubMed accuracy", criterion_citeseer_pubmed);
  run("11", "Cora ablation gains", criterion_ablation_gaps);
  run("12", "PubMed label sparsity", criterion_label_sparsity);
  run("S", "million-node sketch memory", criterion_scale);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
