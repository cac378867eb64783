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
#include <cstdint>
#include <string>

#include "ndls/graph.hpp"
#include "ndls/propagation.hpp"

namespace ndls {

enum class EigenMethod { kAuto, kDense, kPower };

struct SpectralOptions {
  EigenMethod method = EigenMethod::kAuto;
  std::size_t dense_limit = 2048;  // kAuto switches to power iteration above
  std::size_t max_iterations = 200000;
  double tolerance = 1e-12;  // residual norm target for power iteration
  std::uint64_t seed = 7;
};

// Spectrum summary of the transition matrix D~^{-1} A~ on one component.
struct SpectralInfo {
  double lambda2 = 0.0;     // second-largest eigenvalue, signed
  double lambda_min = 0.0;  // smallest eigenvalue
  std::size_t component = 0;
  std::size_t component_size = 0;
  std::string method;  // "dense" or "power"
  std::size_t iterations = 0;

  // Contraction rate of the non-stationary part: max(lambda2, |lambda_min|).
  double rate() const;
};

// Eigenvalues are computed on the symmetric similar matrix
// D~^{-1/2} A~ D~^{-1/2}. The spectrum of A^ is the same for every r, so the
// operator's r is not consulted. Disconnected graphs use the largest
// component. Power iteration throws ConvergenceError past max_iterations.
SpectralInfo second_eigenvalue(const PropagationOperator& op,
                               const SpectralOptions& options = {});
SpectralInfo second_eigenvalue(const Graph& graph,
                               const SpectralOptions& options = {});

}  // namespace ndls
