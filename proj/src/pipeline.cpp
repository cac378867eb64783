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

#include "ndls/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "ndls/errors.hpp"
#include "ndls/propagation.hpp"
#include "ndls/smoothing.hpp"
#include "ndls/sparsity.hpp"

namespace ndls {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <class T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

StageConfig read_stage(const json& j, const std::string& where,
                       StageConfig stage) {
  check_keys(j, where, {"epsilons", "k_max"});
  read_opt(j, "epsilons", stage.epsilons);
  read_opt(j, "k_max", stage.k_max);
  return stage;
}

LsiOptions::Mode lsi_mode_from_string(const std::string& s) {
  if (s == "auto") return LsiOptions::Mode::kAuto;
  if (s == "exact") return LsiOptions::Mode::kExact;
  if (s == "sketch") return LsiOptions::Mode::kSketch;
  throw ConfigError("unknown LSI method '" + s + "'");
}

const char* to_cstr(LsiOptions::Mode mode) {
  switch (mode) {
    case LsiOptions::Mode::kExact: return "exact";
    case LsiOptions::Mode::kSketch: return "sketch";
    default: return "auto";
  }
}

std::string resolve(const fs::path& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

// Shortest decimal form that parses back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string eps_tag(double eps) { return fmt(eps); }

using Clock = std::chrono::steady_clock;

// Runs one stage, records its wall time and tags failures with its name.
template <class F>
auto run_stage(const std::string& name, std::vector<StageTiming>& timings,
               F&& body) {
  const auto start = Clock::now();
  try {
    auto out = body();
    timings.push_back(
        {name, std::chrono::duration<double>(Clock::now() - start).count()});
    return out;
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const std::exception& e) {
    throw StageError(name, NumericalError(e.what()));
  }
}

struct Trained {
  Matrix soft;
  double val_accuracy = 0.0;
  int best_epoch = -1;
};

struct LabelChoice {
  Matrix soft;
  double epsilon = 0.0;
  double val_accuracy = -1.0;
  std::vector<std::pair<double, double>> table;
};

// Sweeps the label-stage epsilons over one base prediction.
LabelChoice choose_label_epsilon(const PropagationOperator& op,
                                 const Matrix& base,
                                 const std::map<double, LsiVector>& lsis,
                                 const std::vector<int>& labels,
                                 const std::vector<NodeId>& val) {
  LabelChoice best;
  for (const auto& [eps, lsi] : lsis) {
    Matrix smoothed = ndls_smooth_labels(op, base, lsi).values;
    const double acc = evaluate_accuracy(smoothed, labels, val);
    best.table.emplace_back(eps, acc);
    if (acc > best.val_accuracy) {
      best.val_accuracy = acc;
      best.epsilon = eps;
      best.soft = std::move(smoothed);
    }
  }
  return best;
}

ordered_json variant_json(const VariantResult& v) {
  ordered_json j;
  j["val_accuracy"] = v.val_accuracy;
  j["test_accuracy"] = v.test_accuracy;
  j["feature_epsilon"] =
      v.feature_epsilon ? ordered_json(*v.feature_epsilon) : ordered_json();
  j["label_epsilon"] =
      v.label_epsilon ? ordered_json(*v.label_epsilon) : ordered_json();
  j["dropout"] = v.dropout;
  j["learning_rate"] = v.learning_rate;
  j["best_epoch"] = v.best_epoch;
  return j;
}

ordered_json stats_json(const LsiStats& s, std::size_t capped) {
  ordered_json j;
  j["mean_k"] = s.mean_k;
  j["max_k"] = s.max_k;
  j["spearman_degree_k"] = s.spearman;
  j["capped_nodes"] = capped;
  ordered_json cdf = ordered_json::array();
  for (const auto& p : s.cdf) cdf.push_back({p.k, p.cdf});
  j["cdf"] = std::move(cdf);
  return j;
}

ordered_json grid_json(const std::vector<GridEntry>& table) {
  ordered_json out = ordered_json::array();
  for (const auto& e : table) {
    ordered_json row;
    row["epsilon"] = e.cell.epsilon;
    row["dropout"] = e.cell.dropout;
    row["learning_rate"] = e.cell.learning_rate;
    row["val_accuracy"] = e.accuracy;
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json pairs_json(const std::vector<std::pair<double, double>>& table) {
  ordered_json out = ordered_json::array();
  for (const auto& [eps, acc] : table) {
    ordered_json row;
    row["epsilon"] = eps;
    row["val_accuracy"] = acc;
    out.push_back(std::move(row));
  }
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

template <class T>
T parse_cell(const std::string& s, const std::string& source, std::size_t line) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(source, line, "bad number '" + s + "'");
  }
  return value;
}

// Reads a CSV with the exact header `header`; returns the data rows.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               const std::string& header,
                                               std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ParseError(path, 1, "expected header '" + header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != columns) {
      throw ParseError(path, line_no, "expected " + std::to_string(columns) +
                                          " columns");
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

void PipelineConfig::validate(bool check_files) const {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("r must lie in [0, 1]");
  for (const auto* stage : {&feature_stage, &label_stage}) {
    const char* name = stage == &feature_stage ? "feature" : "label";
    if (stage->epsilons.empty()) {
      throw ConfigError(std::string(name) + "-stage epsilon grid is empty");
    }
    if (stage->k_max == 0) {
      throw ConfigError(std::string(name) + "-stage k_max must be positive");
    }
    for (double e : stage->epsilons) {
      if (!(e > 0.0)) throw DomainError("epsilon must be positive");
    }
  }
  if (dropouts.empty() || learning_rates.empty()) {
    throw ConfigError("predictor grids must be non-empty");
  }
  for (double p : dropouts) {
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("dropout must lie in [0, 1)");
  }
  for (double lr : learning_rates) {
    if (!(lr > 0.0)) throw DomainError("learning rate must be positive");
  }
  if (epochs < 1 || patience < 1) {
    throw ConfigError("epochs and patience must be positive");
  }
  if (!(weight_decay >= 0.0)) throw DomainError("weight decay must be >= 0");
  if (lsi.probes < 1) throw ConfigError("sketch probes must be positive");
  for (double f : sparsity.edge_fractions) {
    if (!(f >= 0.0 && f < 1.0)) throw DomainError("edge fraction not in [0, 1)");
  }
  for (double f : sparsity.feature_fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw DomainError("feature fraction not in [0, 1]");
    }
  }
  for (std::size_t k : sparsity.label_per_class) {
    if (k < 1) throw ConfigError("label_per_class entries must be >= 1");
  }
  if (check_files) {
    for (const auto* p : {&edges, &features, &labels, &train, &val, &test}) {
      if (p->empty()) throw ConfigError("a dataset path is missing");
      if (!fs::exists(*p)) {
        throw ConfigError("referenced file does not exist: " + *p);
      }
    }
  }
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  try {
    check_keys(j, "config",
               {"edges", "features", "labels", "splits", "r", "feature_stage",
                "label_stage", "model", "lsi", "seed", "sparsity",
                "output_dir", "force_zero_lsi"});
    read_opt(j, "edges", c.edges);
    read_opt(j, "features", c.features);
    read_opt(j, "labels", c.labels);
    if (j.contains("splits")) {
      const json& s = j.at("splits");
      check_keys(s, "splits", {"train", "val", "test"});
      read_opt(s, "train", c.train);
      read_opt(s, "val", c.val);
      read_opt(s, "test", c.test);
    }
    read_opt(j, "r", c.r);
    if (j.contains("feature_stage")) {
      c.feature_stage = read_stage(j.at("feature_stage"), "feature_stage",
                                   c.feature_stage);
    }
    if (j.contains("label_stage")) {
      c.label_stage =
          read_stage(j.at("label_stage"), "label_stage", c.label_stage);
    }
    if (j.contains("model")) {
      const json& m = j.at("model");
      check_keys(m, "model",
                 {"hidden", "linear", "dropouts", "learning_rates",
                  "weight_decay", "epochs", "patience"});
      if (m.contains("hidden")) {
        const json& h = m.at("hidden");
        if (h.is_string() && h.get<std::string>() == "auto") {
          c.hidden.reset();
        } else {
          c.hidden = h.get<std::size_t>();
          if (*c.hidden == 0) throw ConfigError("hidden must be positive");
        }
      }
      read_opt(m, "linear", c.linear);
      read_opt(m, "dropouts", c.dropouts);
      read_opt(m, "learning_rates", c.learning_rates);
      read_opt(m, "weight_decay", c.weight_decay);
      read_opt(m, "epochs", c.epochs);
      read_opt(m, "patience", c.patience);
    }
    if (j.contains("lsi")) {
      const json& l = j.at("lsi");
      check_keys(l, "lsi", {"method", "probes"});
      if (l.contains("method")) {
        c.lsi.mode = lsi_mode_from_string(l.at("method").get<std::string>());
      }
      read_opt(l, "probes", c.lsi.probes);
    }
    read_opt(j, "seed", c.seed);
    if (j.contains("sparsity")) {
      const json& s = j.at("sparsity");
      check_keys(s, "sparsity",
                 {"edge_fractions", "feature_fractions", "label_per_class"});
      read_opt(s, "edge_fractions", c.sparsity.edge_fractions);
      read_opt(s, "feature_fractions", c.sparsity.feature_fractions);
      read_opt(s, "label_per_class", c.sparsity.label_per_class);
    }
    read_opt(j, "output_dir", c.output_dir);
    read_opt(j, "force_zero_lsi", c.force_zero_lsi);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.lsi.seed = c.seed;
  return c;
}

ordered_json config_to_json(const PipelineConfig& c) {
  ordered_json j;
  j["edges"] = c.edges;
  j["features"] = c.features;
  j["labels"] = c.labels;
  j["splits"] = {{"train", c.train}, {"val", c.val}, {"test", c.test}};
  j["r"] = c.r;
  j["feature_stage"] = {{"epsilons", c.feature_stage.epsilons},
                        {"k_max", c.feature_stage.k_max}};
  j["label_stage"] = {{"epsilons", c.label_stage.epsilons},
                      {"k_max", c.label_stage.k_max}};
  ordered_json m;
  m["hidden"] = c.hidden ? ordered_json(*c.hidden) : ordered_json("auto");
  m["linear"] = c.linear;
  m["dropouts"] = c.dropouts;
  m["learning_rates"] = c.learning_rates;
  m["weight_decay"] = c.weight_decay;
  m["epochs"] = c.epochs;
  m["patience"] = c.patience;
  j["model"] = std::move(m);
  j["lsi"] = {{"method", to_cstr(c.lsi.mode)}, {"probes", c.lsi.probes}};
  j["seed"] = c.seed;
  j["sparsity"] = {{"edge_fractions", c.sparsity.edge_fractions},
                   {"feature_fractions", c.sparsity.feature_fractions},
                   {"label_per_class", c.sparsity.label_per_class}};
  j["output_dir"] = c.output_dir;
  j["force_zero_lsi"] = c.force_zero_lsi;
  return j;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  PipelineConfig c = config_from_json(j);
  // Relative paths are taken from the config file's directory.
  const fs::path base = fs::path(path).parent_path();
  for (auto* p : {&c.edges, &c.features, &c.labels, &c.train, &c.val, &c.test,
                  &c.output_dir}) {
    *p = resolve(base, *p);
  }
  return c;
}

Dataset load_dataset(const PipelineConfig& config) {
  config.validate(true);
  Dataset data;
  data.features = load_matrix(config.features);
  LoadOptions options;
  options.node_count = std::size_t(data.features.rows());
  data.graph = load_graph(config.edges, options);
  data.labels = load_labels(config.labels);
  data.splits = load_splits(config.train, config.val, config.test);
  data.validate();
  return data;
}

ordered_json report_to_json(const RunReport& r, bool include_timings) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  j["seed"] = r.seed;
  j["r"] = r.r;
  j["num_nodes"] = r.num_nodes;
  j["num_edges"] = r.num_edges;
  j["train_size"] = r.train_size;
  j["hidden"] = r.hidden;
  ordered_json v;
  v["mlp"] = variant_json(r.mlp);
  v["ndls_f_mlp"] = variant_json(r.ndls_f_mlp);
  v["mlp_ndls_l"] = variant_json(r.mlp_ndls_l);
  v["ndls"] = variant_json(r.ndls);
  j["variants"] = std::move(v);
  j["feature_lsi"] = stats_json(r.feature_lsi, r.feature_capped);
  j["label_lsi"] = stats_json(r.label_lsi, r.label_capped);
  ordered_json grids;
  grids["feature"] = grid_json(r.feature_grid);
  grids["mlp"] = grid_json(r.mlp_grid);
  grids["label"] = pairs_json(r.label_grid);
  grids["mlp_label"] = pairs_json(r.mlp_label_grid);
  j["grids"] = std::move(grids);
  if (include_timings) {
    ordered_json t;
    for (const auto& s : r.timings) t[s.stage] = s.seconds;
    j["timings"] = std::move(t);
  }
  return j;
}

RunReport run_pipeline(const Dataset& data, const PipelineConfig& config,
                       const std::string& artifact_dir) {
  config.validate(false);
  data.validate();
  if (data.splits.val.empty()) {
    throw ConfigError("model selection needs a non-empty validation set");
  }
  if (data.splits.test.empty()) throw ConfigError("test set is empty");
  const auto total_start = Clock::now();
  const std::size_t n = data.graph.num_nodes();

  // Selection only ever sees these labels; test entries are hidden.
  std::vector<int> selection_labels = data.labels;
  for (NodeId id : data.splits.test) selection_labels[id] = kUnlabeled;
  SplitMasks selection_splits = data.splits;
  selection_splits.test.clear();
  const int classes = num_classes(selection_labels);

  if (!artifact_dir.empty()) fs::create_directories(artifact_dir);

  RunReport report;
  report.seed = config.seed;
  report.r = config.r;
  report.num_nodes = n;
  report.num_edges = data.graph.num_edges();
  report.train_size = data.splits.train.size();
  report.hidden = config.linear ? 0 : config.hidden.value_or(default_hidden_size(n));

  const PropagationOperator op = build_operator(data.graph, config.r);
  LsiOptions lsi_options = config.lsi;
  lsi_options.seed = config.seed;

  auto lsi_stage = [&](const StageConfig& stage, const char* prefix) {
    const auto eps = sorted_unique(stage.epsilons);
    std::vector<LsiVector> vectors;
    if (config.force_zero_lsi) {
      for (double e : eps) {
        vectors.push_back(constant_lsi(n, 0));
        vectors.back().epsilon = e;
        vectors.back().r = config.r;
      }
    } else {
      vectors = compute_lsi(op, eps, stage.k_max, lsi_options);
    }
    std::map<double, LsiVector> out;
    for (std::size_t t = 0; t < eps.size(); ++t) {
      if (!artifact_dir.empty()) {
        save_lsi_csv(vectors[t], (fs::path(artifact_dir) /
                                  (std::string(prefix) + "_lsi_eps" +
                                   eps_tag(eps[t]) + ".csv"))
                                     .string());
      }
      out.emplace(eps[t], std::move(vectors[t]));
    }
    return out;
  };

  const auto feature_lsis =
      run_stage("feature_lsi", report.timings,
                [&] { return lsi_stage(config.feature_stage, "feature"); });

  const auto smoothed = run_stage("feature_smoothing", report.timings, [&] {
    std::map<double, Matrix> out;
    for (const auto& [eps, lsi] : feature_lsis) {
      out.emplace(eps, ndls_smooth(op, data.features, lsi).values);
    }
    return out;
  });

  const std::size_t predictor_cells =
      sorted_unique(config.dropouts).size() *
      sorted_unique(config.learning_rates).size();
  // Seeds depend only on the predictor cell, so every epsilon sees the same
  // initialization for a given (dropout, learning rate).
  auto fit = [&](const Matrix& x, const GridCell& cell) {
    MlpHyper hyper;
    hyper.hidden = report.hidden;
    hyper.dropout = cell.dropout;
    hyper.learning_rate = cell.learning_rate;
    hyper.weight_decay = config.weight_decay;
    hyper.epochs = config.epochs;
    hyper.patience = config.patience;
    hyper.seed = config.seed + cell.index % predictor_cells;
    const MlpModel model =
        train_mlp(x, selection_labels, selection_splits, hyper, classes);
    Trained t;
    t.soft = predict_soft(model, x);
    t.val_accuracy =
        evaluate_accuracy(t.soft, selection_labels, selection_splits.val);
    t.best_epoch = model.best_epoch;
    return t;
  };
  auto score = [](const Trained& t, const GridCell&) { return t.val_accuracy; };

  HyperGrid feature_grid;
  feature_grid.dropouts = config.dropouts;
  feature_grid.learning_rates = config.learning_rates;
  feature_grid.epsilons = config.feature_stage.epsilons;
  HyperGrid plain_grid = feature_grid;
  plain_grid.epsilons = {0.0};

  const auto ndls_f = run_stage("training", report.timings, [&] {
    return grid_search(feature_grid,
                       [&](const GridCell& c) { return fit(smoothed.at(c.epsilon), c); },
                       score);
  });
  const auto plain = run_stage("training_plain", report.timings, [&] {
    return grid_search(plain_grid,
                       [&](const GridCell& c) { return fit(data.features, c); },
                       score);
  });

  const auto label_lsis =
      run_stage("label_lsi", report.timings,
                [&] { return lsi_stage(config.label_stage, "label"); });

  const auto full = run_stage("label_smoothing", report.timings, [&] {
    return choose_label_epsilon(op, ndls_f.artifact.soft, label_lsis,
                                selection_labels, selection_splits.val);
  });
  const auto mlp_l = run_stage("label_smoothing_plain", report.timings, [&] {
    return choose_label_epsilon(op, plain.artifact.soft, label_lsis,
                                selection_labels, selection_splits.val);
  });

  // The only reads of test labels.
  const auto& test = data.splits.test;
  auto fill = [&](VariantResult& v, const GridResult<Trained>& base) {
    v.dropout = base.best.dropout;
    v.learning_rate = base.best.learning_rate;
    v.best_epoch = base.artifact.best_epoch;
  };
  fill(report.mlp, plain);
  report.mlp.val_accuracy = plain.best_accuracy;
  report.mlp.test_accuracy =
      evaluate_accuracy(plain.artifact.soft, data.labels, test);

  fill(report.ndls_f_mlp, ndls_f);
  report.ndls_f_mlp.feature_epsilon = ndls_f.best.epsilon;
  report.ndls_f_mlp.val_accuracy = ndls_f.best_accuracy;
  report.ndls_f_mlp.test_accuracy =
      evaluate_accuracy(ndls_f.artifact.soft, data.labels, test);

  fill(report.mlp_ndls_l, plain);
  report.mlp_ndls_l.label_epsilon = mlp_l.epsilon;
  report.mlp_ndls_l.val_accuracy = mlp_l.val_accuracy;
  report.mlp_ndls_l.test_accuracy =
      evaluate_accuracy(mlp_l.soft, data.labels, test);

  fill(report.ndls, ndls_f);
  report.ndls.feature_epsilon = ndls_f.best.epsilon;
  report.ndls.label_epsilon = full.epsilon;
  report.ndls.val_accuracy = full.val_accuracy;
  report.ndls.test_accuracy = evaluate_accuracy(full.soft, data.labels, test);

  const LsiVector& f_lsi = feature_lsis.at(ndls_f.best.epsilon);
  const LsiVector& l_lsi = label_lsis.at(full.epsilon);
  report.feature_lsi = lsi_statistics(f_lsi, data.graph);
  report.label_lsi = lsi_statistics(l_lsi, data.graph);
  report.feature_capped = f_lsi.capped_nodes.size();
  report.label_capped = l_lsi.capped_nodes.size();
  report.feature_grid = ndls_f.table;
  report.mlp_grid = plain.table;
  report.label_grid = full.table;
  report.mlp_label_grid = mlp_l.table;
  report.timings.push_back(
      {"total",
       std::chrono::duration<double>(Clock::now() - total_start).count()});
  return report;
}

RunReport run_pipeline(const PipelineConfig& config) {
  const Dataset data = load_dataset(config);
  return run_pipeline(data, config, config.output_dir);
}

SparsitySuite run_sparsity_suite(const Dataset& data,
                                 const PipelineConfig& config) {
  config.validate(false);
  SparsitySuite suite;
  const auto& s = config.sparsity;
  if (s.edge_fractions.empty() && s.feature_fractions.empty() &&
      s.label_per_class.empty()) {
    suite.warnings.push_back("all sparsity grids are empty; nothing to run");
    return suite;
  }
  for (double f : s.edge_fractions) {
    Dataset d = data;
    d.graph = sparsify_edges(data.graph, f, config.seed);
    suite.settings.push_back({"edge", f, run_pipeline(d, config)});
  }
  for (double f : s.feature_fractions) {
    Dataset d = data;
    d.features = mask_features(data.features, data.splits, f, config.seed);
    suite.settings.push_back({"feature", f, run_pipeline(d, config)});
  }
  for (std::size_t k : s.label_per_class) {
    Dataset d = data;
    d.splits = subsample_labels(data.splits, data.labels, k, config.seed);
    suite.settings.push_back(
        {"label", static_cast<double>(k), run_pipeline(d, config)});
  }
  return suite;
}

SparsitySuite run_sparsity_suite(const PipelineConfig& config) {
  return run_sparsity_suite(load_dataset(config), config);
}

void export_reports(const ReportBundle& bundle, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

  {
    const fs::path path = dir / "run_report.json";
    ordered_json j;
    if (bundle.run) {
      j = report_to_json(*bundle.run);
    } else {
      j["schema_version"] = 1;
    }
    if (!bundle.sparsity.empty()) {
      ordered_json settings = ordered_json::array();
      for (const auto& st : bundle.sparsity) {
        ordered_json row;
        row["axis"] = st.axis;
        row["value"] = st.value;
        row["report"] = report_to_json(st.report);
        settings.push_back(std::move(row));
      }
      j["sparsity"] = std::move(settings);
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish(out, path);
  }
  {
    const fs::path path = dir / "lsi_cdf.csv";
    auto out = open_out(path);
    out << "k,cdf\n";
    for (const auto& p : bundle.lsi.cdf) out << p.k << ',' << fmt(p.cdf) << '\n';
    finish(out, path);
  }
  {
    const fs::path path = dir / "degree_vs_lsi.csv";
    auto out = open_out(path);
    out << "degree,mean_k,count\n";
    for (const auto& b : bundle.lsi.by_degree) {
      out << b.degree << ',' << fmt(b.mean_k) << ',' << b.count << '\n';
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "sparsity_results.csv";
    auto out = open_out(path);
    out << "axis,value,train_size,mlp_test,ndls_f_mlp_test,mlp_ndls_l_test,"
           "ndls_test\n";
    for (const auto& st : bundle.sparsity) {
      const RunReport& r = st.report;
      out << st.axis << ',' << fmt(st.value) << ',' << r.train_size << ','
          << fmt(r.mlp.test_accuracy) << ',' << fmt(r.ndls_f_mlp.test_accuracy)
          << ',' << fmt(r.mlp_ndls_l.test_accuracy) << ','
          << fmt(r.ndls.test_accuracy) << '\n';
    }
    finish(out, path);
  }
}

std::vector<CdfPoint> read_cdf_csv(const std::string& path) {
  std::vector<CdfPoint> out;
  std::size_t line = 1;
  for (const auto& row : read_csv(path, "k,cdf", 2)) {
    ++line;
    out.push_back({parse_cell<std::uint32_t>(row[0], path, line),
                   parse_cell<double>(row[1], path, line)});
  }
  return out;
}

std::vector<DegreeBucket> read_degree_csv(const std::string& path) {
  std::vector<DegreeBucket> out;
  std::size_t line = 1;
  for (const auto& row : read_csv(path, "degree,mean_k,count", 3)) {
    ++line;
    out.push_back({parse_cell<std::size_t>(row[0], path, line),
                   parse_cell<double>(row[1], path, line),
                   parse_cell<std::size_t>(row[2], path, line)});
  }
  return out;
}

}  // namespace ndls
