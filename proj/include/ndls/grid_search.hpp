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

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ndls/errors.hpp"

namespace ndls {

struct HyperGrid {
  std::vector<double> dropouts{0.2, 0.4, 0.6, 0.8};
  std::vector<double> learning_rates{0.1, 0.01, 0.001};
  std::vector<double> epsilons{0.01, 0.03, 0.05};

  void validate() const {
    if (dropouts.empty() || learning_rates.empty() || epsilons.empty()) {
      throw ConfigError("hyperparameter grids must be non-empty");
    }
  }
};

struct GridCell {
  std::size_t index = 0;  // position in the sweep order
  double epsilon = 0.0;
  double dropout = 0.0;
  double learning_rate = 0.0;
};

struct GridEntry {
  GridCell cell;
  double accuracy = 0.0;
};

template <class Artifact>
struct GridResult {
  GridCell best;
  double best_accuracy = 0.0;
  Artifact artifact;
  std::vector<GridEntry> table;
};

// Cells in sweep order: ascending epsilon, then dropout, then learning rate.
std::vector<GridCell> grid_cells(const HyperGrid& grid);

// Exhaustive sweep. `train(cell)` builds an artifact, `evaluate(artifact,
// cell)` scores it on validation data. The first cell in sweep order among
// those with the highest score wins, which breaks ties by smallest epsilon,
// then dropout, then learning rate.
template <class TrainFn, class EvalFn>
auto grid_search(const HyperGrid& grid, TrainFn&& train, EvalFn&& evaluate)
    -> GridResult<decltype(train(std::declval<const GridCell&>()))> {
  grid.validate();
  using Artifact = decltype(train(std::declval<const GridCell&>()));
  GridResult<Artifact> result;
  bool have_best = false;
  for (const GridCell& cell : grid_cells(grid)) {
    Artifact artifact = train(cell);
    const double acc = evaluate(artifact, cell);
    result.table.push_back({cell, acc});
    if (!have_best || acc > result.best_accuracy) {
      have_best = true;
      result.best = cell;
      result.best_accuracy = acc;
      result.artifact = std::move(artifact);
    }
  }
  return result;
}

}  // namespace ndls
