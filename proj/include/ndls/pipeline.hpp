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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ndls/dataset.hpp"
#include "ndls/grid_search.hpp"
#include "ndls/lsi.hpp"
#include "ndls/lsi_stats.hpp"
#include "ndls/model.hpp"

namespace ndls {

struct StageConfig {
  std::vector<double> epsilons{0.01, 0.03, 0.05};
  std::uint32_t k_max = 200;
};

struct SparsityConfig {
  std::vector<double> edge_fractions;     // share of edges removed
  std::vector<double> feature_fractions;  // share of non-train rows zeroed
  std::vector<std::size_t> label_per_class;
};

struct PipelineConfig {
  std::string edges;
  std::string features;
  std::string labels;
  std::string train;
  std::string val;
  std::string test;

  double r = 0.5;
  StageConfig feature_stage{{0.01, 0.03, 0.05}, 200};
  StageConfig label_stage{{0.01, 0.03, 0.05}, 40};

  std::vector<double> dropouts{0.2, 0.4, 0.6, 0.8};
  std::vector<double> learning_rates{0.1, 0.01, 0.001};
  std::optional<std::size_t> hidden;  // unset: 64 below 50k nodes, else 256
  bool linear = false;
  double weight_decay = 5e-4;
  int epochs = 1000;
  int patience = 50;

  LsiOptions lsi;
  std::uint64_t seed = 0;
  SparsityConfig sparsity;
  std::string output_dir = "ndls_out";

  // Forces K = 0 in both smoothing stages (the degenerate control run).
  bool force_zero_lsi = false;

  // Checks grids and caps; with `check_files`, also that inputs exist.
  void validate(bool check_files) const;
};

PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const PipelineConfig& config);
PipelineConfig load_config(const std::string& path);
Dataset load_dataset(const PipelineConfig& config);

struct VariantResult {
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::optional<double> feature_epsilon;
  std::optional<double> label_epsilon;
  double dropout = 0.0;
  double learning_rate = 0.0;
  int best_epoch = -1;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunReport {
  int schema_version = 1;
  std::uint64_t seed = 0;
  double r = 0.0;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t train_size = 0;
  std::size_t hidden = 0;

  VariantResult mlp;         // plain MLP on raw features
  VariantResult ndls_f_mlp;  // feature smoothing + MLP
  VariantResult mlp_ndls_l;  // MLP + label smoothing
  VariantResult ndls;        // all three stages

  LsiStats feature_lsi;  // at the selected feature epsilon
  LsiStats label_lsi;    // at the selected label epsilon
  std::size_t feature_capped = 0;
  std::size_t label_capped = 0;

  std::vector<GridEntry> feature_grid;
  std::vector<GridEntry> mlp_grid;
  std::vector<std::pair<double, double>> label_grid;      // on NDLS-F+MLP
  std::vector<std::pair<double, double>> mlp_label_grid;  // on plain MLP

  std::vector<StageTiming> timings;
};

nlohmann::ordered_json report_to_json(const RunReport& report,
                                      bool include_timings = true);

// Runs feature smoothing, base prediction and label smoothing together with
// the three ablations. Hyperparameters and both epsilons are chosen on
// validation accuracy; test labels are read once per variant at the end.
// Failures are rethrown with the failing stage's name. When
// `artifact_dir` is non-empty, intermediate LSI vectors are written there
// as each stage finishes.
RunReport run_pipeline(const Dataset& data, const PipelineConfig& config,
                       const std::string& artifact_dir = "");
RunReport run_pipeline(const PipelineConfig& config);

struct SparsitySetting {
  std::string axis;  // "edge", "feature" or "label"
  double value = 0.0;
  RunReport report;
};

struct SparsitySuite {
  std::vector<SparsitySetting> settings;
  std::vector<std::string> warnings;
};

// Sweeps each sparsity axis independently around the base dataset.
SparsitySuite run_sparsity_suite(const Dataset& data,
                                 const PipelineConfig& config);
SparsitySuite run_sparsity_suite(const PipelineConfig& config);

struct ReportBundle {
  std::optional<RunReport> run;
  LsiStats lsi;  // drives lsi_cdf.csv and degree_vs_lsi.csv
  std::vector<SparsitySetting> sparsity;
};

// Writes run_report.json, lsi_cdf.csv ("k,cdf"), degree_vs_lsi.csv
// ("degree,mean_k,count") and sparsity_results.csv into out_dir.
void export_reports(const ReportBundle& bundle, const std::string& out_dir);

std::vector<CdfPoint> read_cdf_csv(const std::string& path);
std::vector<DegreeBucket> read_degree_csv(const std::string& path);

}  // namespace ndls
