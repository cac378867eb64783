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

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndls/bounds.hpp"
#include "ndls/dataset.hpp"
#include "ndls/errors.hpp"
#include "ndls/graph.hpp"
#include "ndls/lsi.hpp"
#include "ndls/lsi_stats.hpp"
#include "ndls/model.hpp"
#include "ndls/pipeline.hpp"
#include "ndls/propagation.hpp"
#include "ndls/smoothing.hpp"
#include "ndls/spectral.hpp"
#include "ndls/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GraphArgs {
  std::string edges;
  std::optional<std::size_t> nodes;
  double r = 0.5;
};

void add_graph_args(CLI::App* cmd, GraphArgs& g, bool with_r = true) {
  cmd->add_option("--edges", g.edges, "Edge list file")->required();
  cmd->add_option("--nodes", g.nodes,
                  "Node count (default: largest id + 1, or feature rows)");
  if (with_r) {
    cmd->add_option("--r", g.r, "Normalization exponent in [0, 1]")
        ->capture_default_str();
  }
}

ndls::Graph read_graph(const GraphArgs& g, std::optional<std::size_t> rows) {
  ndls::LoadOptions opts;
  opts.node_count = g.nodes ? g.nodes : rows;
  return ndls::load_graph(g.edges, opts);
}

struct LsiArgs {
  std::vector<double> epsilons{0.03};
  std::uint32_t k_max = 200;
  std::string method = "auto";
  std::size_t probes = 128;
  std::uint64_t seed = 0;
};

void add_lsi_args(CLI::App* cmd, LsiArgs& a, std::uint32_t default_k_max) {
  a.k_max = default_k_max;
  cmd->add_option("--epsilon", a.epsilons, "Distance threshold(s)")
      ->capture_default_str();
  cmd->add_option("--k-max", a.k_max, "Iteration cap")->capture_default_str();
  cmd->add_option("--method", a.method, "auto, exact or sketch")
      ->check(CLI::IsMember({"auto", "exact", "sketch"}))
      ->capture_default_str();
  cmd->add_option("--probes", a.probes, "Sketch width")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Random seed")->capture_default_str();
}

std::vector<ndls::LsiVector> run_lsi(const ndls::PropagationOperator& op,
                                     const LsiArgs& a) {
  ndls::LsiOptions opts;
  opts.mode = a.method == "exact"    ? ndls::LsiOptions::Mode::kExact
              : a.method == "sketch" ? ndls::LsiOptions::Mode::kSketch
                                     : ndls::LsiOptions::Mode::kAuto;
  opts.probes = a.probes;
  opts.seed = a.seed;
  return ndls::compute_lsi(op, a.epsilons, a.k_max, opts);
}

// LSI from a file when given, else computed with the LSI arguments.
ndls::LsiVector lsi_input(const std::string& path,
                          const ndls::PropagationOperator& op, LsiArgs a) {
  if (!path.empty()) {
    const ndls::LsiVector lsi = path.ends_with(".csv")
                                    ? ndls::load_lsi_csv(path)
                                    : ndls::load_lsi_binary(path);
    if (lsi.size() != op.num_nodes()) {
      throw ndls::ShapeError("LSI file has " + std::to_string(lsi.size()) +
                             " entries, graph has " +
                             std::to_string(op.num_nodes()) + " nodes");
    }
    return lsi;
  }
  if (a.epsilons.size() != 1) {
    throw ndls::ConfigError("give exactly one --epsilon or an --lsi file");
  }
  return run_lsi(op, a).front();
}

std::string with_suffix(const std::string& path, double eps,
                        std::size_t count) {
  if (count == 1) return path;
  const fs::path p(path);
  std::ostringstream tag;
  tag << eps;
  return (p.parent_path() /
          (p.stem().string() + "_eps" + tag.str() + p.extension().string()))
      .string();
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

ordered_json lsi_summary(const ndls::LsiVector& lsi, const ndls::LsiStats& s) {
  ordered_json j;
  j["epsilon"] = lsi.epsilon;
  j["method"] = ndls::to_string(lsi.method);
  j["k_max"] = lsi.k_max;
  j["mean_k"] = s.mean_k;
  j["max_k"] = s.max_k;
  j["spearman_degree_k"] = s.spearman;
  j["capped_nodes"] = lsi.capped_nodes.size();
  if (lsi.method == ndls::LsiMethod::kSketch) {
    j["probes"] = lsi.probes;
    j["low_confidence"] = lsi.low_confidence;
  }
  return j;
}

struct PipelineOverrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> r;
  std::vector<double> epsilons;
  std::vector<double> label_epsilons;
  std::optional<std::uint32_t> k_max;
  std::optional<std::uint32_t> label_k_max;
  std::optional<std::string> out_dir;
  std::optional<std::string> method;
  std::optional<std::size_t> probes;
  std::optional<int> epochs;
  bool force_zero = false;
};

void add_pipeline_args(CLI::App* cmd, PipelineOverrides& o) {
  cmd->add_option("--config", o.config, "JSON config file")->required();
  cmd->add_option("--seed", o.seed, "Override the seed");
  cmd->add_option("--r", o.r, "Override r");
  cmd->add_option("--epsilon", o.epsilons,
                  "Override the epsilon grid of both stages");
  cmd->add_option("--label-epsilon", o.label_epsilons,
                  "Override the label-stage epsilon grid");
  cmd->add_option("--k-max", o.k_max, "Override the feature-stage cap");
  cmd->add_option("--label-k-max", o.label_k_max,
                  "Override the label-stage cap");
  cmd->add_option("--method", o.method, "LSI method: auto, exact or sketch")
      ->check(CLI::IsMember({"auto", "exact", "sketch"}));
  cmd->add_option("--probes", o.probes, "Sketch width");
  cmd->add_option("--epochs", o.epochs, "Override the epoch budget");
  cmd->add_option("--out-dir", o.out_dir, "Override the output directory");
  cmd->add_flag("--force-zero-lsi", o.force_zero,
                "Fix K = 0 in both smoothing stages");
}

ndls::PipelineConfig resolve_config(const PipelineOverrides& o) {
  ndls::PipelineConfig c = ndls::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.r) c.r = *o.r;
  if (!o.epsilons.empty()) {
    c.feature_stage.epsilons = o.epsilons;
    c.label_stage.epsilons = o.epsilons;
  }
  if (!o.label_epsilons.empty()) c.label_stage.epsilons = o.label_epsilons;
  if (o.k_max) c.feature_stage.k_max = *o.k_max;
  if (o.label_k_max) c.label_stage.k_max = *o.label_k_max;
  if (o.method) {
    c.lsi.mode = *o.method == "exact"    ? ndls::LsiOptions::Mode::kExact
                 : *o.method == "sketch" ? ndls::LsiOptions::Mode::kSketch
                                         : ndls::LsiOptions::Mode::kAuto;
  }
  if (o.probes) c.lsi.probes = *o.probes;
  if (o.epochs) c.epochs = *o.epochs;
  if (o.out_dir) c.output_dir = *o.out_dir;
  if (o.force_zero) c.force_zero_lsi = true;
  c.lsi.seed = c.seed;
  c.validate(true);
  return c;
}

void summarize(const ndls::RunReport& r) {
  std::fprintf(stderr,
               "test accuracy  mlp %.4f  ndls-f+mlp %.4f  mlp+ndls-l %.4f  "
               "ndls %.4f\n",
               r.mlp.test_accuracy, r.ndls_f_mlp.test_accuracy,
               r.mlp_ndls_l.test_accuracy, r.ndls.test_accuracy);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node-dependent local smoothing for graph node classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ndls 0.1.0");

  // lsi
  GraphArgs lsi_graph;
  LsiArgs lsi_args;
  std::string lsi_out;
  std::string lsi_stats_dir;
  auto* lsi_cmd = app.add_subcommand("lsi", "Compute per-node LSI and statistics");
  add_graph_args(lsi_cmd, lsi_graph);
  add_lsi_args(lsi_cmd, lsi_args, 200);
  lsi_cmd->add_option("--out", lsi_out,
                      "Output file (.csv, else binary); one per epsilon");
  lsi_cmd->add_option("--stats-dir", lsi_stats_dir,
                      "Write lsi_cdf.csv and degree_vs_lsi.csv here");

  // smooth-features
  GraphArgs sf_graph;
  LsiArgs sf_lsi;
  std::string sf_features;
  std::string sf_lsi_file;
  std::string sf_out;
  std::string sf_kernel = "ndls";
  std::uint32_t sf_k = 2;
  auto* sf_cmd = app.add_subcommand("smooth-features", "Smooth a feature matrix");
  add_graph_args(sf_cmd, sf_graph);
  add_lsi_args(sf_cmd, sf_lsi, 200);
  sf_cmd->add_option("--features", sf_features, "Feature matrix")->required();
  sf_cmd->add_option("--lsi", sf_lsi_file, "Precomputed LSI file");
  sf_cmd->add_option("--out", sf_out, "Output matrix")->required();
  sf_cmd->add_option("--kernel", sf_kernel, "ndls, sgc or s2gc")
      ->check(CLI::IsMember({"ndls", "sgc", "s2gc"}))
      ->capture_default_str();
  sf_cmd->add_option("--k", sf_k, "Depth for sgc and s2gc")->capture_default_str();

  // train
  std::string tr_features, tr_labels, tr_train, tr_val, tr_model, tr_pred;
  ndls::MlpHyper tr_hyper;
  bool tr_linear = false;
  auto* tr_cmd = app.add_subcommand("train", "Train the MLP on a feature matrix");
  tr_cmd->add_option("--features", tr_features, "Feature matrix")->required();
  tr_cmd->add_option("--labels", tr_labels, "Label file")->required();
  tr_cmd->add_option("--train", tr_train, "Train ids")->required();
  tr_cmd->add_option("--val", tr_val, "Validation ids")->required();
  tr_cmd->add_option("--hidden", tr_hyper.hidden, "Hidden width")->capture_default_str();
  tr_cmd->add_flag("--linear", tr_linear, "No hidden layer");
  tr_cmd->add_option("--dropout", tr_hyper.dropout, "Dropout rate")->capture_default_str();
  tr_cmd->add_option("--lr", tr_hyper.learning_rate, "Learning rate")->capture_default_str();
  tr_cmd->add_option("--weight-decay", tr_hyper.weight_decay, "L2 coefficient")
      ->capture_default_str();
  tr_cmd->add_option("--epochs", tr_hyper.epochs, "Epoch budget")->capture_default_str();
  tr_cmd->add_option("--patience", tr_hyper.patience, "Early-stopping patience")
      ->capture_default_str();
  tr_cmd->add_option("--seed", tr_hyper.seed, "Random seed")->capture_default_str();
  tr_cmd->add_option("--model-out", tr_model, "Checkpoint path")->required();
  tr_cmd->add_option("--predictions-out", tr_pred, "Write soft labels here");

  // smooth-labels
  GraphArgs sl_graph;
  LsiArgs sl_lsi;
  std::string sl_soft, sl_lsi_file, sl_out, sl_model, sl_features;
  auto* sl_cmd = app.add_subcommand("smooth-labels", "Smooth soft label predictions");
  add_graph_args(sl_cmd, sl_graph);
  add_lsi_args(sl_cmd, sl_lsi, 40);
  sl_cmd->add_option("--soft", sl_soft, "Soft label matrix");
  sl_cmd->add_option("--model", sl_model, "Checkpoint to predict with");
  sl_cmd->add_option("--features", sl_features, "Features for --model");
  sl_cmd->add_option("--lsi", sl_lsi_file, "Precomputed LSI file");
  sl_cmd->add_option("--out", sl_out, "Output matrix")->required();

  // evaluate
  std::string ev_soft, ev_labels, ev_mask;
  auto* ev_cmd = app.add_subcommand("evaluate", "Accuracy of soft labels on a mask");
  ev_cmd->add_option("--soft", ev_soft, "Soft label matrix")->required();
  ev_cmd->add_option("--labels", ev_labels, "Label file")->required();
  ev_cmd->add_option("--mask", ev_mask, "Node ids to score")->required();

  // pipeline, sparsity-suite
  PipelineOverrides pl;
  auto* pl_cmd = app.add_subcommand("pipeline", "Run all stages and ablations");
  add_pipeline_args(pl_cmd, pl);
  PipelineOverrides ss;
  auto* ss_cmd = app.add_subcommand("sparsity-suite", "Sweep edge, feature and label sparsity");
  add_pipeline_args(ss_cmd, ss);

  // check-bounds
  GraphArgs cb_graph;
  LsiArgs cb_lsi;
  std::string cb_out;
  auto* cb_cmd = app.add_subcommand(
      "check-bounds", "Check LSI against the spectral and neighbor bounds (r = 0)");
  add_graph_args(cb_cmd, cb_graph, false);
  cb_lsi.epsilons = {0.01, 0.03, 0.05};
  cb_lsi.method = "exact";
  add_lsi_args(cb_cmd, cb_lsi, 400);
  cb_cmd->add_option("--out", cb_out, "Write the full JSON report here");

  // generate
  std::string gen_kind = "planted";
  std::string gen_dir;
  std::size_t gen_nodes = 600;
  double gen_p = 0.02;
  std::size_t gen_attach = 2;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic graph or dataset");
  gen_cmd->add_option("--kind", gen_kind, "planted, er or ba")
      ->check(CLI::IsMember({"planted", "er", "ba"}))
      ->capture_default_str();
  gen_cmd->add_option("--nodes", gen_nodes, "Node count")->capture_default_str();
  gen_cmd->add_option("--p", gen_p, "Edge probability (er)")->capture_default_str();
  gen_cmd->add_option("--attach", gen_attach, "Edges per new node (ba)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*lsi_cmd) {
      const ndls::Graph g = read_graph(lsi_graph, std::nullopt);
      const auto op = ndls::build_operator(g, lsi_graph.r);
      const auto all = run_lsi(op, lsi_args);
      ordered_json out = ordered_json::array();
      for (const auto& lsi : all) {
        const auto stats = ndls::lsi_statistics(lsi, g);
        out.push_back(lsi_summary(lsi, stats));
        if (!lsi_out.empty()) {
          const auto path = with_suffix(lsi_out, lsi.epsilon, all.size());
          if (path.ends_with(".csv")) {
            ndls::save_lsi_csv(lsi, path);
          } else {
            ndls::save_lsi_binary(lsi, path);
          }
        }
        if (!lsi_stats_dir.empty()) {
          ndls::ReportBundle bundle;
          bundle.lsi = stats;
          ndls::export_reports(
              bundle, with_suffix(lsi_stats_dir, lsi.epsilon, all.size()));
        }
      }
      print_json(out);
    } else if (*sf_cmd) {
      const ndls::Matrix x = ndls::load_matrix(sf_features);
      const ndls::Graph g = read_graph(sf_graph, std::size_t(x.rows()));
      const auto op = ndls::build_operator(g, sf_graph.r);
      ndls::SmoothedMatrix out;
      if (sf_kernel == "sgc") {
        out = ndls::sgc_smooth(op, x, sf_k);
      } else if (sf_kernel == "s2gc") {
        out = ndls::s2gc_smooth(op, x, sf_k);
      } else {
        out = ndls::ndls_smooth(op, x, lsi_input(sf_lsi_file, op, sf_lsi));
      }
      ndls::save_matrix(out.values, sf_out);
      std::fprintf(stderr, "%s: %ld x %ld, deepest propagation %u\n",
                   ndls::to_string(out.provenance.kernel).c_str(),
                   long(out.values.rows()), long(out.values.cols()),
                   out.provenance.max_lsi);
    } else if (*tr_cmd) {
      const ndls::Matrix x = ndls::load_matrix(tr_features);
      const auto labels = ndls::load_labels(tr_labels);
      ndls::SplitMasks splits;
      splits.train = ndls::load_node_ids(tr_train);
      splits.val = ndls::load_node_ids(tr_val);
      splits.validate(std::size_t(x.rows()));
      if (tr_linear) tr_hyper.hidden = 0;
      const auto model = ndls::train_mlp(x, labels, splits, tr_hyper);
      ndls::save_model(model, tr_model);
      if (!tr_pred.empty()) ndls::save_matrix(ndls::predict_soft(model, x), tr_pred);
      ordered_json j;
      j["best_epoch"] = model.best_epoch;
      j["val_accuracy"] = model.best_val_accuracy;
      j["epochs_run"] = model.history.size();
      print_json(j);
    } else if (*sl_cmd) {
      ndls::Matrix soft;
      if (!sl_soft.empty()) {
        soft = ndls::load_matrix(sl_soft);
      } else if (!sl_model.empty() && !sl_features.empty()) {
        soft = ndls::predict_soft(ndls::load_model(sl_model),
                                  ndls::load_matrix(sl_features));
      } else {
        throw ndls::ConfigError("give --soft, or --model with --features");
      }
      const ndls::Graph g = read_graph(sl_graph, std::size_t(soft.rows()));
      const auto op = ndls::build_operator(g, sl_graph.r);
      const auto out =
          ndls::ndls_smooth_labels(op, soft, lsi_input(sl_lsi_file, op, sl_lsi));
      ndls::save_matrix(out.values, sl_out);
    } else if (*ev_cmd) {
      const auto acc = ndls::evaluate_accuracy(ndls::load_matrix(ev_soft),
                                               ndls::load_labels(ev_labels),
                                               ndls::load_node_ids(ev_mask));
      std::printf("%.6f\n", acc);
    } else if (*pl_cmd) {
      const auto config = resolve_config(pl);
      const auto data = ndls::load_dataset(config);
      const auto report = ndls::run_pipeline(data, config, config.output_dir);
      ndls::ReportBundle bundle;
      bundle.run = report;
      bundle.lsi = report.feature_lsi;
      ndls::export_reports(bundle, config.output_dir);
      summarize(report);
      std::fprintf(stderr, "reports written to %s\n", config.output_dir.c_str());
    } else if (*ss_cmd) {
      const auto config = resolve_config(ss);
      const auto suite = ndls::run_sparsity_suite(config);
      for (const auto& w : suite.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      ndls::ReportBundle bundle;
      bundle.sparsity = suite.settings;
      ndls::export_reports(bundle, config.output_dir);
      for (const auto& s : suite.settings) {
        std::fprintf(stderr, "%-8s %-8g ", s.axis.c_str(), s.value);
        summarize(s.report);
      }
    } else if (*cb_cmd) {
      const ndls::Graph g = read_graph(cb_graph, std::nullopt);
      const auto op = ndls::build_operator(g, 0.0);
      const auto spectral = ndls::second_eigenvalue(g);
      ordered_json out = ordered_json::array();
      ordered_json full = ordered_json::array();
      for (const auto& lsi : run_lsi(op, cb_lsi)) {
        const auto rep = ndls::check_bounds(lsi, g, spectral);
        ordered_json j;
        j["epsilon"] = rep.epsilon;
        j["lambda2"] = rep.lambda2;
        j["lambda_min"] = rep.lambda_min;
        j["rate"] = rep.rate;
        j["spectral_violations"] = rep.count(ndls::BoundKind::kSpectral);
        j["neighbor_violations"] = rep.count(ndls::BoundKind::kNeighbor);
        j["union_violations"] = rep.count(ndls::BoundKind::kUnion);
        out.push_back(j);
        ordered_json v = ordered_json::array();
        for (const auto& viol : rep.violations) {
          v.push_back({{"node", viol.node},
                       {"kind", ndls::to_string(viol.kind)},
                       {"k", viol.k},
                       {"bound", viol.bound}});
        }
        j["violations"] = std::move(v);
        full.push_back(std::move(j));
      }
      if (!cb_out.empty()) {
        std::ofstream f(cb_out);
        if (!f) throw ndls::IoError("cannot write " + cb_out);
        f << full.dump(2) << '\n';
      }
      print_json(out);
    } else if (*gen_cmd) {
      fs::create_directories(gen_dir);
      const fs::path dir(gen_dir);
      auto write_edges = [&](const ndls::Graph& g) {
        std::ofstream f(dir / "edges.txt");
        f << "# " << g.num_nodes() << " nodes\n";
        for (auto [u, v] : g.edge_list()) f << u << '\t' << v << '\n';
        if (!f) throw ndls::IoError("cannot write " + (dir / "edges.txt").string());
      };
      if (gen_kind == "er") {
        write_edges(ndls::erdos_renyi(gen_nodes, gen_p, gen_seed));
      } else if (gen_kind == "ba") {
        write_edges(ndls::barabasi_albert(gen_nodes, gen_attach, gen_seed));
      } else {
        ndls::PlantedPartitionOptions o;
        o.nodes = gen_nodes;
        o.seed = gen_seed;
        o.val_size = gen_nodes / 6;
        o.test_size = gen_nodes / 3;
        const auto d = ndls::planted_partition(o);
        write_edges(d.graph);
        ndls::save_matrix(d.features, (dir / "features.bin").string());
        ndls::save_labels(d.labels, (dir / "labels.txt").string());
        ndls::save_node_ids(d.splits.train, (dir / "train.txt").string());
        ndls::save_node_ids(d.splits.val, (dir / "val.txt").string());
        ndls::save_node_ids(d.splits.test, (dir / "test.txt").string());
        ndls::PipelineConfig c;
        c.edges = "edges.txt";
        c.features = "features.bin";
        c.labels = "labels.txt";
        c.train = "train.txt";
        c.val = "val.txt";
        c.test = "test.txt";
        c.output_dir = "out";
        c.seed = gen_seed;
        std::ofstream f(dir / "config.json");
        f << ndls::config_to_json(c).dump(2) << '\n';
      }
      std::fprintf(stderr, "wrote %s\n", gen_dir.c_str());
    }
  } catch (const ndls::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error: out of memory\n");
    return static_cast<int>(ndls::ErrorCategory::kNumerical);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(ndls::ErrorCategory::kData);
  }
  return 0;
}
