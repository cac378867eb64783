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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ndls/dataset.hpp"
#include "ndls/types.hpp"

namespace ndls {

enum class Optimizer { kAdam, kGradientDescent };

struct MlpHyper {
  std::size_t hidden = 64;  // 0 removes the hidden layer (linear softmax)
  double dropout = 0.5;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  int epochs = 1000;
  int patience = 50;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::kAdam;
  bool zero_output_init = false;
};

// 64 below 50,000 nodes, 256 otherwise.
std::size_t default_hidden_size(std::size_t num_nodes);

// Two-layer MLP  softmax(relu(X W1 + b1) W2 + b2), or softmax(X W2 + b2)
// when w1 is empty.
struct MlpParams {
  Matrix w1;  // f x h
  Vector b1;  // h
  Matrix w2;  // h x c (f x c when linear)
  Vector b2;  // c

  bool linear() const { return w1.size() == 0; }
  std::size_t input_dim() const {
    return std::size_t(linear() ? w2.rows() : w1.rows());
  }
  std::size_t num_classes() const { return std::size_t(w2.cols()); }
  bool all_finite() const;
  bool operator==(const MlpParams& other) const;
};

using MlpGradients = MlpParams;

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
};

struct MlpModel {
  MlpParams params;
  MlpHyper hyper;
  std::vector<EpochRecord> history;
  int best_epoch = -1;  // -1: untrained initialization
  double best_val_accuracy = 0.0;
};

MlpModel init_mlp(std::size_t input_dim, std::size_t num_classes,
                  const MlpHyper& hyper);

// Full-batch training on the train ids, early stopping on validation
// accuracy (validation loss breaks ties). Returns the best epoch's
// parameters. `num_classes` < 0 infers max label + 1.
MlpModel train_mlp(const Matrix& features, const std::vector<int>& labels,
                   const SplitMasks& splits, const MlpHyper& hyper,
                   int num_classes = -1);

// Row-wise softmax outputs; dropout is never applied here.
Matrix predict_soft(const MlpModel& model, const Matrix& features);
Matrix predict_logits(const MlpParams& params, const Matrix& features);

// Numerically stable row softmax.
Matrix softmax_rows(const Matrix& logits);

// Fraction of `mask` nodes whose argmax (lowest index on ties) equals the
// label. Throws ConfigError on an empty mask.
double evaluate_accuracy(const Matrix& soft, const std::vector<int>& labels,
                         std::span<const NodeId> mask);

int argmax_row(const Matrix& m, Eigen::Index row);

// Mean cross-entropy over the rows of `x` (targets `y`, one per row) plus
// weight_decay/2 * (|W1|^2 + |W2|^2), without dropout. Fills `grad` when
// non-null.
double loss_and_gradient(const MlpParams& params, const Matrix& x,
                         std::span<const int> y, double weight_decay,
                         MlpGradients* grad);

struct GradCheckOptions {
  std::size_t samples_per_tensor = 25;
  double step = 1e-5;
  std::uint64_t seed = 1;
  // Applied to the analytic gradient before comparison (negative controls).
  std::function<void(MlpGradients&)> perturb;
};

// Max relative error |a - n| / max(|a| + |n|, 1e-6) between analytic and
// central-difference gradients over sampled parameters. Samples whose
// stencil crosses a ReLU kink are skipped.
double gradient_check(const MlpModel& model, const Matrix& features,
                      std::span<const int> labels,
                      const GradCheckOptions& options = {});

// Checkpoint: "NDLSMLP1", u64 input_dim, u64 hidden (0 = linear),
// u64 classes, then W1, b1, W2, b2 as little-endian float64, row-major.
// Hyperparameters go to a JSON sidecar at `path + ".json"`.
void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

}  // namespace ndls
