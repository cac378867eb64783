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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "ndls/errors.hpp"
#include "ndls/lsi.hpp"
#include "ndls/propagation.hpp"
#include "ndls/smoothing.hpp"
#include "ndls/synthetic.hpp"
#include "oracle.hpp"

using namespace ndls;

namespace {

LsiVector lsi_of(std::vector<std::uint32_t> k) {
  LsiVector v;
  v.values = std::move(k);
  v.k_max = 100;
  return v;
}

LsiVector random_lsi(std::size_t n, std::uint32_t max_k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, max_k);
  std::vector<std::uint32_t> k(n);
  for (auto& v : k) v = pick(rng);
  return lsi_of(std::move(k));
}

Matrix random_features(std::size_t n, std::size_t f, std::uint64_t seed) {
  Matrix m = oracle::random_matrix(Eigen::Index(n), Eigen::Index(f), seed);
  return m;
}

// Reference: dense powers, then per-node truncated mean.
Matrix reference_ndls(const oracle::Dense& p, const Matrix& x,
                      const std::vector<std::uint32_t>& k) {
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    oracle::Dense pk = oracle::Dense::Identity(p.rows(), p.cols());
    for (std::uint32_t t = 0; t <= k[i]; ++t) {
      out.row(i) += pk.row(i) * x;
      pk = pk * p;
    }
    out.row(i) /= double(k[i] + 1);
  }
  return out;
}

bool bit_identical(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

}  // namespace

TEST_CASE("NDLS feature smoothing") {
  const auto path = build_operator(path_graph(3), 0.0);
  SUBCASE("K = 0 returns the input") {
    const Matrix x = random_features(3, 4, 1);
    CHECK(ndls_smooth(path, x, lsi_of({0, 0, 0})).values == x);
  }
  SUBCASE("constant K = 2 is the three-term average") {
    const Matrix x = random_features(3, 2, 2);
    const Matrix ax = path.propagate(x);
    const Matrix aax = path.propagate(ax);
    const Matrix out = ndls_smooth(path, x, lsi_of({2, 2, 2})).values;
    CHECK((out - (x + ax + aax) / 3.0).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("hand-computed path values") {
    Matrix x(3, 1);
    x << 1, 0, 0;
    const auto out = ndls_smooth(path, x, lsi_of({2, 1, 2}));
    CHECK(out.values(0, 0) == doctest::Approx(0.63888888888889).epsilon(1e-12));
    CHECK(out.values(1, 0) == doctest::Approx(1.0 / 6).epsilon(1e-12));
    CHECK(out.provenance.kernel == SmoothingKernel::kNdls);
    CHECK(out.provenance.max_lsi == 2);
  }
  SUBCASE("length mismatch is a shape error") {
    CHECK_THROWS_AS(ndls_smooth(path, random_features(3, 2, 0), lsi_of({1, 1})), ShapeError);
    CHECK_THROWS_AS(ndls_smooth(path, random_features(4, 2, 0), lsi_of({1, 1, 1})), ShapeError);
  }
  SUBCASE("matches the dense reference on random inputs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Graph g = barabasi_albert(60, 2, seed);
      for (double r : {0.0, 0.5}) {
        const auto op = build_operator(g, r);
        const Matrix x = random_features(60, 3, seed);
        const auto lsi = random_lsi(60, 9, seed);
        const Matrix ref = reference_ndls(oracle::dense_operator(g, r), x, lsi.values);
        CHECK((ndls_smooth(op, x, lsi).values - ref).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("a node's output ignores other nodes' K") {
  const Graph g = barabasi_albert(50, 2, 8);
  const auto op = build_operator(g, 0.5);
  const Matrix x = random_features(50, 4, 3);
  auto lsi = random_lsi(50, 6, 1);
  const Matrix before = ndls_smooth(op, x, lsi).values;
  lsi.values[10] = 25;  // raises the global depth too
  const Matrix after = ndls_smooth(op, x, lsi).values;
  for (Eigen::Index i = 0; i < 50; ++i) {
    if (i == 10) continue;
    CHECK(std::memcmp(before.row(i).data(), after.row(i).data(), sizeof(double) * 4) == 0);
  }
}

TEST_CASE("M weights") {
  SUBCASE("small example") {
    const auto m = build_m_weights(lsi_of({2, 1, 2}));
    REQUIRE(m.depth() == 3);
    CHECK(m.diagonals[0][0] == doctest::Approx(1.0 / 3));
    CHECK(m.diagonals[1][1] == doctest::Approx(0.5));
    CHECK(m.diagonals[2][1] == 0.0);
  }
  SUBCASE("all zero gives the identity") {
    const auto m = build_m_weights(lsi_of({0, 0, 0, 0}));
    REQUIRE(m.depth() == 1);
    CHECK(m.diagonals[0] == std::vector<double>(4, 1.0));
  }
  SUBCASE("columns sum to one") {
    const auto lsi = random_lsi(40, 12, 3);
    const auto m = build_m_weights(lsi);
    for (std::size_t i = 0; i < 40; ++i) {
      double sum = 0.0;
      for (const auto& d : m.diagonals) sum += d[i];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("matrix form equals the streaming kernel") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = seed % 2 ? barabasi_albert(40 + seed, 2, seed)
                             : connect_components(erdos_renyi(40 + seed, 0.08, seed), seed);
    const auto op = build_operator(g, 0.5 * double(seed % 3));
    const Matrix x = random_features(g.num_nodes(), 3, seed + 50);
    const auto lsi = random_lsi(g.num_nodes(), 10, seed + 7);
    const auto m = build_m_weights(lsi);
    Matrix sum = Matrix::Zero(x.rows(), x.cols());
    Matrix ak = x;
    for (std::size_t k = 0; k < m.depth(); ++k) {
      for (Eigen::Index i = 0; i < x.rows(); ++i) sum.row(i) += m.diagonals[k][i] * ak.row(i);
      ak = op.propagate(ak);
    }
    CHECK((ndls_smooth(op, x, lsi).values - sum).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("SGC and S2GC") {
  const Graph g = barabasi_albert(40, 2, 1);
  const auto op = build_operator(g, 0.5);
  const Matrix x = random_features(40, 3, 9);
  CHECK(sgc_smooth(op, x, 0).values == x);
  CHECK(sgc_smooth(op, x, 1).values == op.propagate(x));
  CHECK(s2gc_smooth(op, x, 0).values == x);
  for (std::uint32_t k : {1u, 3u, 8u}) {
    CHECK(bit_identical(s2gc_smooth(op, x, k).values,
                        ndls_smooth(op, x, constant_lsi(40, k)).values));
  }
  SUBCASE("single edge mixes to column means") {
    const std::vector<Edge> e{{0, 1}};
    const auto two = build_operator(Graph::from_edges(2, e), 0.0);
    Matrix y(2, 3);
    y << 1, 2, 3, 5, -2, 0;
    const Matrix out = sgc_smooth(two, y, 4).values;
    for (int c = 0; c < 3; ++c) {
      CHECK(out(0, c) == doctest::Approx(y.col(c).mean()));
      CHECK(out(1, c) == doctest::Approx(y.col(c).mean()));
    }
  }
  SUBCASE("path, k = 2") {
    Matrix y(3, 1);
    y << 1, 0, 0;
    CHECK(s2gc_smooth(build_operator(path_graph(3), 0.0), y, 2).values(0, 0) ==
          doctest::Approx(0.63888888888889));
  }
}

TEST_CASE("label smoothing") {
  const std::vector<Edge> e{{0, 1}};
  const auto two = build_operator(Graph::from_edges(2, e), 0.0);
  SUBCASE("one-hot pair") {
    Matrix y(2, 2);
    y << 1, 0, 0, 1;
    const Matrix out = ndls_smooth_labels(two, y, lsi_of({1, 1})).values;
    CHECK(out(0, 0) == doctest::Approx(0.75));
    CHECK(out(0, 1) == doctest::Approx(0.25));
    CHECK(out(1, 0) == doctest::Approx(0.25));
  }
  SUBCASE("K = 0 keeps predictions") {
    Matrix y(2, 2);
    y << 0.3, 0.7, 0.9, 0.1;
    CHECK(ndls_smooth_labels(two, y, lsi_of({0, 0})).values == y);
  }
  SUBCASE("rows stay stochastic and match the feature path bit for bit") {
    const Graph g = barabasi_albert(80, 2, 4);
    const auto op = build_operator(g, 0.0);
    Matrix y = random_features(80, 5, 1).cwiseAbs();
    for (Eigen::Index i = 0; i < y.rows(); ++i) y.row(i) /= y.row(i).sum();
    const auto lsi = random_lsi(80, 7, 2);
    const Matrix labels = ndls_smooth_labels(op, y, lsi).values;
    CHECK(bit_identical(labels, ndls_smooth(op, y, lsi).values));
    for (Eigen::Index i = 0; i < labels.rows(); ++i) {
      CHECK(labels.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("invalid rows are listed") {
    Matrix y(2, 2);
    y << 0.5, 0.5, 0.9, 0.3;
    try {
      ndls_smooth_labels(two, y, lsi_of({1, 1}));
      FAIL("expected a validation error");
    } catch (const ValidationError& err) {
      CHECK(err.nodes() == std::vector<std::size_t>{1});
    }
    y << -0.1, 1.1, 0.5, 0.5;
    CHECK(invalid_probability_rows(y) == std::vector<std::size_t>{0});
  }
}

TEST_CASE("mass is preserved for r = 1") {
  // Column-stochastic operator: column sums of X survive every step.
  const Graph g = barabasi_albert(70, 3, 2);
  const auto op = build_operator(g, 1.0);
  const Matrix x = random_features(70, 2, 4);
  const Matrix out = sgc_smooth(op, x, 6).values;
  for (int c = 0; c < 2; ++c) {
    CHECK(out.col(c).sum() == doctest::Approx(x.col(c).sum()).epsilon(1e-12));
  }
}

TEST_CASE("smoothing is local") {
  // A node only sees features within K hops.
  const Graph g = path_graph(10);
  const auto op = build_operator(g, 0.5);
  Matrix x = Matrix::Zero(10, 1);
  x(9, 0) = 1.0;
  std::vector<std::uint32_t> k(10, 0);
  k[0] = 8;  // 9 hops away
  k[5] = 4;  // exactly 4 hops away
  const Matrix out = ndls_smooth(op, x, lsi_of(k)).values;
  CHECK(out(0, 0) == 0.0);
  CHECK(out(5, 0) > 0.0);
}
