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
#include <vector>

#include "ndls/errors.hpp"
#include "ndls/propagation.hpp"
#include "ndls/spectral.hpp"
#include "ndls/synthetic.hpp"
#include "oracle.hpp"

using namespace ndls;

namespace {

Graph single_edge() {
  const std::vector<Edge> e{{0, 1}};
  return Graph::from_edges(2, e);
}

Graph connected_random(std::size_t n, std::uint64_t seed) {
  return connect_components(erdos_renyi(n, 3.0 / double(n), seed), seed + 100);
}

Matrix to_matrix(const oracle::Dense& d) {
  Matrix m = d;
  return m;
}

}  // namespace

TEST_CASE("operator weights") {
  SUBCASE("single edge, r=0") {
    const auto op = build_operator(single_edge(), 0.0);
    for (double w : op.values()) CHECK(w == doctest::Approx(0.5));
  }
  SUBCASE("path center row, r=0") {
    const auto op = build_operator(path_graph(3), 0.0);
    for (NodeId j = 0; j < 3; ++j) CHECK(op.weight(1, j) == doctest::Approx(1.0 / 3));
    CHECK(op.weight(0, 2) == 0.0);
  }
  SUBCASE("path, r=0.5") {
    const auto op = build_operator(path_graph(3), 0.5);
    CHECK(op.weight(0, 1) == doctest::Approx(0.40824829046386).epsilon(1e-12));
  }
  SUBCASE("matches the dense oracle for several r") {
    const Graph g = connected_random(40, 5);
    for (double r : {0.0, 0.25, 0.5, 1.0}) {
      const oracle::Dense ref = oracle::dense_operator(g, r);
      const auto op = build_operator(g, r);
      for (NodeId i = 0; i < g.num_nodes(); ++i) {
        for (NodeId j = 0; j < g.num_nodes(); ++j) {
          CHECK(op.weight(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-14));
        }
      }
    }
  }
  SUBCASE("r outside [0, 1] is a domain error") {
    CHECK_THROWS_AS(build_operator(single_edge(), -0.1), DomainError);
    CHECK_THROWS_AS(build_operator(single_edge(), 1.5), DomainError);
  }
}

TEST_CASE("row and column sums") {
  const Graph g = barabasi_albert(80, 2, 1);
  const Matrix ones = Matrix::Ones(80, 1);
  const Matrix rows = build_operator(g, 0.0).propagate(ones);
  for (Eigen::Index i = 0; i < 80; ++i) CHECK(std::abs(rows(i, 0) - 1.0) < 1e-12);
  Matrix cols(80, 1);
  build_operator(g, 1.0).propagate_transpose_into(ones, cols);
  for (Eigen::Index i = 0; i < 80; ++i) CHECK(std::abs(cols(i, 0) - 1.0) < 1e-12);
  const auto mid = build_operator(g, 0.3);
  for (double w : mid.values()) CHECK(w > 0.0);
}

TEST_CASE("propagate") {
  const Graph p = path_graph(3);
  const auto op = build_operator(p, 0.0);
  SUBCASE("identity input gives operator rows") {
    const Matrix out = op.propagate(Matrix::Identity(3, 3));
    for (NodeId i = 0; i < 3; ++i) {
      for (NodeId j = 0; j < 3; ++j) CHECK(out(i, j) == doctest::Approx(op.weight(i, j)));
    }
  }
  SUBCASE("two steps give row 0 of the square") {
    const Matrix out = op.propagate(op.propagate(Matrix::Identity(3, 3)));
    CHECK(out(0, 0) == doctest::Approx(5.0 / 12));
    CHECK(out(0, 1) == doctest::Approx(5.0 / 12));
    CHECK(out(0, 2) == doctest::Approx(1.0 / 6));
  }
  SUBCASE("input is left untouched and shape is checked") {
    Matrix x = Matrix::Random(3, 4);
    const Matrix copy = x;
    (void)op.propagate(x);
    CHECK(x == copy);
    CHECK_THROWS_AS(op.propagate(Matrix::Ones(4, 1)), ShapeError);
  }
  SUBCASE("linearity") {
    const Graph g = connected_random(120, 3);
    const auto big = build_operator(g, 0.5);
    const Matrix x = to_matrix(oracle::random_matrix(120, 5, 1));
    const Matrix y = to_matrix(oracle::random_matrix(120, 5, 2));
    const Matrix lhs = big.propagate(2.5 * x - 0.75 * y);
    const Matrix rhs = 2.5 * big.propagate(x) - 0.75 * big.propagate(y);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("transpose matches the dense oracle") {
    const Graph g = connected_random(50, 8);
    const oracle::Dense ref = oracle::dense_operator(g, 0.7);
    const auto t = build_operator(g, 0.7);
    const Matrix x = to_matrix(oracle::random_matrix(50, 3, 4));
    Matrix out(50, 3);
    t.propagate_transpose_into(x, out);
    CHECK((out - to_matrix(ref.transpose() * x)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("stationary rows") {
  SUBCASE("single edge") {
    const StationaryModel s(single_edge(), 0.0);
    CHECK(stationary_row(s, 0) == std::vector<double>{0.5, 0.5});
    CHECK(stationary_row(s, 1) == std::vector<double>{0.5, 0.5});
  }
  SUBCASE("path, r=0") {
    const StationaryModel s(path_graph(3), 0.0);
    for (NodeId i = 0; i < 3; ++i) {
      const auto row = stationary_row(s, i);
      CHECK(row[0] == doctest::Approx(2.0 / 7));
      CHECK(row[1] == doctest::Approx(3.0 / 7));
      CHECK(row[2] == doctest::Approx(2.0 / 7));
    }
  }
  SUBCASE("two disjoint edges are restricted to their block") {
    const std::vector<Edge> e{{0, 1}, {2, 3}};
    const StationaryModel s(Graph::from_edges(4, e), 0.0);
    CHECK(stationary_row(s, 0) == std::vector<double>{0.5, 0.5, 0.0, 0.0});
    CHECK(stationary_row(s, 3) == std::vector<double>{0.0, 0.0, 0.5, 0.5});
  }
  SUBCASE("rows sum to 1 per component at r=0") {
    const Graph g = erdos_renyi(90, 0.02, 6);
    const StationaryModel s(g, 0.0);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      double sum = 0.0;
      for (double v : s.row(i)) sum += v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("row norm and apply agree with the dense row") {
    const Graph g = erdos_renyi(70, 0.04, 2);
    const StationaryModel s(g, 0.4);
    const Matrix z = to_matrix(oracle::random_matrix(70, 2, 3));
    const Matrix applied = s.apply(z);
    for (NodeId i = 0; i < 70; ++i) {
      const auto row = s.row(i);
      double norm2 = 0.0;
      double dot = 0.0;
      for (NodeId j = 0; j < 70; ++j) {
        norm2 += row[j] * row[j];
        dot += row[j] * z(j, 1);
      }
      CHECK(s.row_norm_squared(i) == doctest::Approx(norm2).epsilon(1e-12));
      CHECK(applied(i, 1) == doctest::Approx(dot).epsilon(1e-10));
    }
    CHECK_THROWS_AS(s.row(70), BoundsError);
  }
}

TEST_CASE("closed form matches high powers") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = connected_random(30 + 12 * seed, seed);
    for (double r : {0.0, 0.5, 1.0}) {
      const oracle::Dense p5000 = oracle::power(oracle::dense_operator(g, r), 5000);
      const StationaryModel s(g, r);
      double worst = 0.0;
      for (NodeId i = 0; i < g.num_nodes(); ++i) {
        const auto row = s.row(i);
        for (NodeId j = 0; j < g.num_nodes(); ++j) {
          worst = std::max(worst, std::abs(row[j] - p5000(i, j)));
        }
      }
      CHECK(worst < 1e-5);
    }
  }
}

TEST_CASE("distance to stationarity is non-increasing") {
  const Graph g = connected_random(60, 12);
  const oracle::Dense p = oracle::dense_operator(g, 0.0);
  const StationaryModel s(g, 0.0);
  oracle::Dense inf(60, 60);
  for (NodeId i = 0; i < 60; ++i) {
    const auto row = s.row(i);
    for (NodeId j = 0; j < 60; ++j) inf(i, j) = row[j];
  }
  oracle::Dense pk = oracle::Dense::Identity(60, 60);
  double prev = (pk - inf).norm();
  bool reached = false;
  for (int k = 1; k <= 10000 && !reached; ++k) {
    pk = pk * p;
    const double d = (pk - inf).norm();
    CHECK(d <= prev + 1e-12);
    prev = d;
    reached = d < 1e-6;
  }
  CHECK(reached);
}

TEST_CASE("second eigenvalue") {
  SpectralOptions dense;
  dense.method = EigenMethod::kDense;
  SpectralOptions power;
  power.method = EigenMethod::kPower;

  SUBCASE("complete graph and single edge mix in one step") {
    std::vector<Edge> e;
    for (NodeId i = 0; i < 6; ++i) {
      for (NodeId j = i + 1; j < 6; ++j) e.emplace_back(i, j);
    }
    const Graph k6 = Graph::from_edges(6, e);
    CHECK(std::abs(second_eigenvalue(k6, dense).lambda2) < 1e-12);
    CHECK(std::abs(second_eigenvalue(single_edge(), dense).lambda2) < 1e-12);
    CHECK(std::abs(second_eigenvalue(single_edge(), power).lambda2) < 1e-10);
  }
  SUBCASE("path against a hand-built symmetric matrix") {
    oracle::Dense sym(3, 3);
    const double d[] = {2, 3, 2};
    const oracle::Dense a = oracle::adjacency_with_loops(3, {{0, 1}, {1, 2}});
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) sym(i, j) = a(i, j) / std::sqrt(d[i] * d[j]);
    }
    Eigen::SelfAdjointEigenSolver<oracle::Dense> es(sym);
    const SpectralInfo info = second_eigenvalue(path_graph(3), dense);
    CHECK(info.lambda2 == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));
    CHECK(info.lambda2 == doctest::Approx(0.5));
    CHECK(info.lambda_min == doctest::Approx(-1.0 / 6));
    CHECK(info.rate() == doctest::Approx(0.5));
  }
  SUBCASE("power iteration agrees with the dense solve") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const Graph g = seed % 2 ? barabasi_albert(150, 2, seed)
                               : connected_random(150, seed);
      const SpectralInfo a = second_eigenvalue(g, dense);
      const SpectralInfo b = second_eigenvalue(g, power);
      CHECK(std::abs(a.lambda2) < 1.0);
      CHECK(std::abs(a.lambda2 - b.lambda2) < 1e-8);
      CHECK(std::abs(a.lambda_min - b.lambda_min) < 1e-8);
      CHECK(b.method == "power");
    }
  }
  SUBCASE("spectrum does not depend on r") {
    const Graph g = connected_random(40, 1);
    const double a = second_eigenvalue(build_operator(g, 0.0), dense).lambda2;
    const double b = second_eigenvalue(build_operator(g, 0.8), dense).lambda2;
    CHECK(a == b);
  }
  SUBCASE("iteration cap raises a convergence error") {
    SpectralOptions capped = power;
    capped.max_iterations = 3;
    CHECK_THROWS_AS(second_eigenvalue(connected_random(100, 4), capped),
                    ConvergenceError);
  }
}
