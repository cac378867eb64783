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

#include "ndls/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "binary_io.hpp"
#include "ndls/errors.hpp"

namespace ndls {

void SplitMasks::validate(std::size_t n) const {
  std::vector<int> owner(n, -1);
  const std::vector<NodeId>* sets[] = {&train, &val, &test};
  for (int s = 0; s < 3; ++s) {
    for (NodeId id : *sets[s]) {
      if (id >= n) {
        throw BoundsError("split contains node " + std::to_string(id) +
                          " but graph has " + std::to_string(n) + " nodes");
      }
      if (owner[id] != -1) {
        throw ConfigError("node " + std::to_string(id) +
                          " appears in more than one split");
      }
      owner[id] = s;
    }
  }
}

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Matrix load_matrix(const std::string& path) {
  return ends_with(path, ".csv") ? load_matrix_csv(path)
                                 : load_matrix_binary(path);
}

void save_matrix(const Matrix& m, const std::string& path) {
  if (ends_with(path, ".csv")) {
    save_matrix_csv(m, path);
  } else {
    save_matrix_binary(m, path);
  }
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix csv: " + path);
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t count = 0;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      field = trim(field);
      double v = 0.0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(path, line_no, "bad number '" + field + "'");
      }
      values.push_back(v);
      ++count;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(path, line_no,
                       "expected " + std::to_string(cols) + " columns, got " +
                           std::to_string(count));
    }
    ++rows;
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), m.data());
  return m;
}

void save_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write matrix csv: " + path);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

Matrix load_matrix_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file: " + path);
  const auto n = detail::read_le<std::uint32_t>(in, path);
  const auto f = detail::read_le<std::uint32_t>(in, path);
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = double(detail::read_le<float>(in, path));
  }
  return m;
}

void save_matrix_binary(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write matrix file: " + path);
  detail::write_le<std::uint32_t>(out, std::uint32_t(m.rows()));
  detail::write_le<std::uint32_t>(out, std::uint32_t(m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    detail::write_le<float>(out, float(m.data()[i]));
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<int> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels: " + path);
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    int v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size() || v < -1) {
      throw ParseError(path, line_no, "expected class id or -1, got '" +
                                          line + "'");
    }
    labels.push_back(v);
  }
  return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write labels: " + path);
  for (int v : labels) out << v << '\n';
}

std::vector<NodeId> load_node_ids(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open node id list: " + path);
  std::vector<NodeId> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    NodeId v = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw ParseError(path, line_no, "expected node id, got '" + line + "'");
    }
    ids.push_back(v);
  }
  return ids;
}

void save_node_ids(const std::vector<NodeId>& ids, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write node ids: " + path);
  for (NodeId v : ids) out << v << '\n';
}

SplitMasks load_splits(const std::string& train, const std::string& val,
                       const std::string& test) {
  return {load_node_ids(train), load_node_ids(val), load_node_ids(test)};
}

int num_classes(const std::vector<int>& labels) {
  int c = -1;
  for (int v : labels) c = std::max(c, v);
  return c + 1;
}

void Dataset::validate() const {
  const std::size_t n = graph.num_nodes();
  if (std::size_t(features.rows()) != n) {
    throw ShapeError("features have " + std::to_string(features.rows()) +
                     " rows, graph has " + std::to_string(n) + " nodes");
  }
  if (labels.size() != n) {
    throw ShapeError("labels have " + std::to_string(labels.size()) +
                     " entries, graph has " + std::to_string(n) + " nodes");
  }
  splits.validate(n);
  for (const auto* set : {&splits.train, &splits.val}) {
    for (NodeId id : *set) {
      if (labels[id] < 0) {
        throw DataError("node " + std::to_string(id) +
                        " is in train/val but unlabeled");
      }
    }
  }
}

}  // namespace ndls
