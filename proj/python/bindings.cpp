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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ndls/errors.hpp"
#include "ndls/graph.hpp"
#include "ndls/lsi.hpp"
#include "ndls/lsi_stats.hpp"
#include "ndls/pipeline.hpp"
#include "ndls/propagation.hpp"
#include "ndls/smoothing.hpp"
#include "ndls/spectral.hpp"
#include "ndls/synthetic.hpp"

namespace py = pybind11;
using namespace ndls;

namespace {

Graph graph_from_edges(std::size_t n, const std::vector<Edge>& edges) {
  return Graph::from_edges(n, edges);
}

LsiVector lsi_from_values(std::vector<std::uint32_t> values, double epsilon) {
  LsiVector lsi;
  lsi.values = std::move(values);
  lsi.epsilon = epsilon;
  return lsi;
}

std::string run_config_file(const std::string& path) {
  return report_to_json(run_pipeline(load_config(path))).dump();
}

std::string run_json(const Dataset& data, const std::string& config_json) {
  PipelineConfig config = config_from_json(nlohmann::json::parse(config_json));
  return report_to_json(run_pipeline(data, config)).dump();
}

}  // namespace

PYBIND11_MODULE(_ndls, m) {
  m.doc() = "Node-dependent local smoothing core";

  // Exceptions follow the error category (the CLI exit code), so domain
  // errors surface as ConfigError.
  static py::exception<Error> base(m, "NdlsError");
  static py::exception<Error> config(m, "ConfigError", base.ptr());
  static py::exception<Error> data(m, "DataError", base.ptr());
  static py::exception<Error> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      switch (e.category()) {
        case ErrorCategory::kConfig: py::set_error(config, e.what()); break;
        case ErrorCategory::kData: py::set_error(data, e.what()); break;
        case ErrorCategory::kNumerical: py::set_error(numerical, e.what()); break;
      }
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("num_nodes"), py::arg("edges"),
           "Undirected graph from (u, v) pairs; self-loops are implicit.")
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degrees_tilde", &Graph::degrees_tilde)
      .def("edge_list", &Graph::edge_list);

  py::class_<LoadOptions>(m, "LoadOptions")
      .def(py::init<>())
      .def_readwrite("symmetrize", &LoadOptions::symmetrize)
      .def_readwrite("node_count", &LoadOptions::node_count);
  m.def("load_graph", py::overload_cast<const std::string&, const LoadOptions&>(&load_graph),
        py::arg("path"), py::arg("options") = LoadOptions{});

  py::class_<PropagationOperator>(m, "PropagationOperator")
      .def(py::init<Graph, double>(), py::arg("graph"), py::arg("r") = 0.5)
      .def_property_readonly("num_nodes", &PropagationOperator::num_nodes)
      .def("weight", &PropagationOperator::weight)
      .def("propagate", &PropagationOperator::propagate, py::arg("x"));

  py::class_<StationaryModel>(m, "StationaryModel")
      .def(py::init<const Graph&, double>(), py::arg("graph"), py::arg("r"))
      .def("row", &StationaryModel::row)
      .def("entry", &StationaryModel::entry);

  py::class_<LsiVector>(m, "LsiVector")
      .def(py::init(&lsi_from_values), py::arg("values"), py::arg("epsilon") = 0.0)
      .def_readonly("values", &LsiVector::values)
      .def_readonly("epsilon", &LsiVector::epsilon)
      .def_readonly("k_max", &LsiVector::k_max)
      .def_readonly("probes", &LsiVector::probes)
      .def_readonly("low_confidence", &LsiVector::low_confidence)
      .def_readonly("capped_nodes", &LsiVector::capped_nodes)
      .def("max_value", &LsiVector::max_value)
      .def("__len__", &LsiVector::size);

  m.def("compute_lsi_exact",
        py::overload_cast<const PropagationOperator&, double, std::uint32_t>(&compute_lsi_exact),
        py::arg("op"), py::arg("epsilon"), py::arg("k_max") = 200);
  m.def("compute_lsi_sketch",
        py::overload_cast<const PropagationOperator&, double, std::uint32_t, std::size_t,
                          std::uint64_t>(&compute_lsi_sketch),
        py::arg("op"), py::arg("epsilon"), py::arg("k_max") = 200, py::arg("probes") = 128,
        py::arg("seed") = 0);
  m.def("constant_lsi", &constant_lsi, py::arg("n"), py::arg("k"));

  m.def(
      "ndls_smooth",
      [](const PropagationOperator& op, const Matrix& x, const LsiVector& lsi) {
        return ndls_smooth(op, x, lsi).values;
      },
      py::arg("op"), py::arg("x"), py::arg("lsi"));
  m.def(
      "ndls_smooth_labels",
      [](const PropagationOperator& op, const Matrix& y, const LsiVector& lsi) {
        return ndls_smooth_labels(op, y, lsi).values;
      },
      py::arg("op"), py::arg("soft_labels"), py::arg("lsi"));

  py::class_<SpectralInfo>(m, "SpectralInfo")
      .def_readonly("lambda2", &SpectralInfo::lambda2)
      .def_readonly("lambda_min", &SpectralInfo::lambda_min)
      .def_readonly("method", &SpectralInfo::method)
      .def("rate", &SpectralInfo::rate);
  py::class_<SpectralOptions>(m, "SpectralOptions").def(py::init<>());
  m.def("second_eigenvalue",
        py::overload_cast<const Graph&, const SpectralOptions&>(&second_eigenvalue),
        py::arg("graph"), py::arg("options") = SpectralOptions{});

  py::class_<LsiStats>(m, "LsiStats")
      .def_readonly("spearman", &LsiStats::spearman)
      .def_readonly("mean_k", &LsiStats::mean_k);
  m.def("lsi_statistics", &lsi_statistics, py::arg("lsi"), py::arg("graph"));

  py::class_<SplitMasks>(m, "SplitMasks")
      .def_readonly("train", &SplitMasks::train)
      .def_readonly("val", &SplitMasks::val)
      .def_readonly("test", &SplitMasks::test);
  py::class_<Dataset>(m, "Dataset")
      .def_readonly("graph", &Dataset::graph)
      .def_readonly("features", &Dataset::features)
      .def_readonly("labels", &Dataset::labels)
      .def_readonly("splits", &Dataset::splits)
      .def("num_classes", &Dataset::num_classes);

  m.def(
      "planted_partition",
      [](std::size_t nodes, std::size_t classes, std::uint64_t seed) {
        PlantedPartitionOptions o;
        o.nodes = nodes;
        o.classes = classes;
        o.seed = seed;
        return planted_partition(o);
      },
      py::arg("nodes") = 600, py::arg("classes") = 3, py::arg("seed") = 0);

  m.def("_run_config_file", &run_config_file, py::call_guard<py::gil_scoped_release>());
  m.def("_run_json", &run_json, py::call_guard<py::gil_scoped_release>());
}
