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

#include <filesystem>
#include <fstream>
#include <vector>

#include "ndls/dataset.hpp"
#include "ndls/errors.hpp"
#include "ndls/synthetic.hpp"

using namespace ndls;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "ndls_dataset_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("matrix files") {
  const auto dir = scratch();
  Matrix m(3, 2);
  m << 1.5, -2, 0, 0.25, 3, 4;
  save_matrix(m, (dir / "m.csv").string());
  CHECK(load_matrix((dir / "m.csv").string()) == m);
  save_matrix(m, (dir / "m.bin").string());
  CHECK(load_matrix((dir / "m.bin").string()) == m);  // values fit in float32
  CHECK(fs::file_size(dir / "m.bin") == 8 + 3 * 2 * 4);

  write(dir / "ragged.csv", "1,2\n3\n");
  try {
    load_matrix_csv((dir / "ragged.csv").string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  write(dir / "short.bin", "abc");
  CHECK_THROWS_AS(load_matrix_binary((dir / "short.bin").string()), DataError);
  CHECK_THROWS_AS(load_matrix((dir / "missing.csv").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("labels and splits") {
  const auto dir = scratch();
  save_labels({0, 2, -1, 1}, (dir / "y.txt").string());
  CHECK(load_labels((dir / "y.txt").string()) == std::vector<int>{0, 2, -1, 1});
  CHECK(num_classes({0, 2, -1, 1}) == 3);
  CHECK(num_classes({-1, -1}) == 0);
  write(dir / "bad.txt", "0\nfoo\n");
  CHECK_THROWS_AS(load_labels((dir / "bad.txt").string()), ParseError);

  save_node_ids({0, 1}, (dir / "tr.txt").string());
  save_node_ids({2}, (dir / "va.txt").string());
  save_node_ids({3}, (dir / "te.txt").string());
  const SplitMasks s = load_splits((dir / "tr.txt").string(), (dir / "va.txt").string(),
                                   (dir / "te.txt").string());
  CHECK(s.train == std::vector<NodeId>{0, 1});
  CHECK_NOTHROW(s.validate(4));
  CHECK_THROWS_AS(s.validate(3), BoundsError);
  SplitMasks overlap = s;
  overlap.val.push_back(0);
  CHECK_THROWS_AS(overlap.validate(4), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("dataset validation") {
  PlantedPartitionOptions o;
  o.nodes = 90;
  o.train_per_class = 5;
  o.val_size = 20;
  o.test_size = 30;
  Dataset d = planted_partition(o);
  CHECK(d.num_classes() == 3);
  CHECK(d.graph.components().size() == 1);
  CHECK(d.splits.train.size() == 15);
  Dataset bad = d;
  bad.labels[d.splits.val[0]] = kUnlabeled;
  CHECK_THROWS_AS(bad.validate(), DataError);
  bad = d;
  bad.features = Matrix::Zero(10, 2);
  CHECK_THROWS_AS(bad.validate(), ShapeError);
}
