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

#include "ndls/grid_search.hpp"

#include <algorithm>

namespace ndls {

std::vector<GridCell> grid_cells(const HyperGrid& grid) {
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto eps = sorted(grid.epsilons);
  const auto drops = sorted(grid.dropouts);
  const auto lrs = sorted(grid.learning_rates);
  std::vector<GridCell> cells;
  for (double e : eps) {
    for (double d : drops) {
      for (double lr : lrs) {
        cells.push_back({cells.size(), e, d, lr});
      }
    }
  }
  return cells;
}

}  // namespace ndls
