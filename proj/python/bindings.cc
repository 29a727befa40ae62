// Copyright 2026 The layercode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "layercode/bench.h"
#include "layercode/fit.h"

namespace py = pybind11;
using namespace layercode;

namespace {

BitMatrix to_matrix(const std::vector<std::string> &rows) {
    return BitMatrix::from_strings(rows);
}

std::vector<std::string> to_rows(const BitMatrix &m) {
    std::vector<std::string> out;
    for (size_t r = 0; r < m.rows(); r++) {
        out.push_back(m.row(r).to_string());
    }
    return out;
}

InputDecoder::Kind input_kind(const std::string &s) {
    if (s == "minw") {
        return InputDecoder::Kind::MinWeight;
    }
    if (s == "miny") {
        return InputDecoder::Kind::MinYWeight;
    }
    throw std::invalid_argument("input decoder must be minw or miny");
}

ExperimentSpec make_spec(ExperimentKind kind, std::vector<int> n, std::vector<double> grid, size_t trials,
                         uint64_t seed, size_t R, size_t r, unsigned workers, const std::string &decoder,
                         const std::string &input_decoder, int K, const std::string &variant) {
    ExperimentSpec s;
    s.kind = kind;
    s.n_grid = std::move(n);
    (kind == ExperimentKind::Threshold ? s.p_grid : s.beta_grid) = std::move(grid);
    s.trials = trials;
    s.seed = seed;
    s.candidates = R;
    s.kept = r;
    s.workers = workers;
    s.decoder = parse_decoder(decoder);
    s.input_decoder = input_kind(input_decoder);
    s.K = K;
    s.variant = parse_variant(variant);
    return s;
}

}  // namespace

PYBIND11_MODULE(_layercode, m) {
    m.doc() = "Layer codes: construction, decoders and benchmarks";

    py::class_<CssCode>(m, "CssCode")
        .def(py::init([](const std::vector<std::string> &hx, const std::vector<std::string> &hz) {
                 return CssCode(to_matrix(hx), to_matrix(hz));
             }),
             py::arg("hx"), py::arg("hz"))
        .def_static("steane", &CssCode::steane)
        .def_static("from_text", &CssCode::from_text)
        .def("to_text", &CssCode::to_text)
        .def_property_readonly("n", &CssCode::n)
        .def_property_readonly("k", &CssCode::k)
        .def_property_readonly("hx", [](const CssCode &c) { return to_rows(c.hx); })
        .def_property_readonly("hz", [](const CssCode &c) { return to_rows(c.hz); })
        .def("min_distance", [](const CssCode &c, size_t w_max) { return min_distance(c, w_max); },
             py::arg("w_max"));

    py::class_<LayerCode>(m, "LayerCode")
        .def_property_readonly("num_qubits", &LayerCode::num_qubits)
        .def_property_readonly("num_x_checks", [](const LayerCode &L) { return L.x_checks.size(); })
        .def_property_readonly("num_z_checks", [](const LayerCode &L) { return L.z_checks.size(); })
        .def_property_readonly("k", &LayerCode::k)
        .def_property_readonly("max_check_weight", &LayerCode::max_check_weight)
        .def("checks_commute", &LayerCode::checks_commute)
        .def_readonly("checks_x", &LayerCode::checks_x)
        .def_readonly("checks_z", &LayerCode::checks_z)
        .def("z_syndrome",
             [](const LayerCode &L, const std::vector<size_t> &support) {
                 return L.z_syndrome(BitVector::from_support(L.num_qubits(), support)).support();
             })
        .def("export", [](const LayerCode &L, const std::string &prefix) { export_layer_code(L, prefix); });

    m.def(
        "build",
        [](const CssCode &c, int K, const std::string &variant) { return build(c, K, parse_variant(variant)); },
        py::arg("code"), py::arg("K") = 1, py::arg("variant") = "original");
    m.def("import_layer_code", &import_layer_code, py::arg("prefix"));

    py::class_<LayerCodeDecoder>(m, "Decoder")
        .def(py::init([](const CssCode &c, int K, const std::string &variant, const std::string &decoder,
                         const std::string &input_decoder) {
                 return new LayerCodeDecoder(c, K, parse_variant(variant), parse_decoder(decoder),
                                             input_kind(input_decoder));
             }),
             py::arg("code"), py::arg("K") = 1, py::arg("variant") = "original", py::arg("decoder") = "cluster",
             py::arg("input_decoder") = "minw")
        .def("decode",
             [](const LayerCodeDecoder &d, const std::vector<size_t> &syndrome) {
                 return d.decode(BitVector::from_support(d.code().z_checks.size(), syndrome)).support();
             })
        .def("logical_failure", [](const LayerCodeDecoder &d, const std::vector<size_t> &error,
                                   const std::vector<size_t> &correction) {
            size_t n = d.code().num_qubits();
            return d.logical_failure(BitVector::from_support(n, error), BitVector::from_support(n, correction));
        });

    m.def(
        "ensemble_manifest",
        [](size_t n, size_t R, size_t r, uint64_t seed) {
            ExperimentSpec s;
            s.seed = seed;
            s.candidates = R;
            s.kept = r;
            return experiment_ensemble(s, (int)n).manifest_json();
        },
        py::arg("n"), py::arg("R") = 2000, py::arg("r") = 20, py::arg("seed") = 0);

    m.def(
        "threshold_csv",
        [](std::vector<int> n, std::vector<double> p, size_t trials, uint64_t seed, size_t R, size_t r,
           unsigned workers, const std::string &decoder, const std::string &input_decoder, int K,
           const std::string &variant) {
            ExperimentSpec s = make_spec(ExperimentKind::Threshold, std::move(n), std::move(p), trials, seed, R, r,
                                         workers, decoder, input_decoder, K, variant);
            std::vector<ThresholdRow> rows;
            {
                py::gil_scoped_release release;
                rows = threshold_experiment(s);
            }
            std::ostringstream out;
            write_threshold_csv(out, rows);
            return out.str();
        },
        py::arg("n"), py::arg("p"), py::arg("trials") = 2000, py::arg("seed") = 0, py::arg("R") = 2000,
        py::arg("r") = 20, py::arg("workers") = 1, py::arg("decoder") = "cluster", py::arg("input_decoder") = "minw",
        py::arg("K") = 1, py::arg("variant") = "original");

    m.def(
        "memory_csv",
        [](std::vector<int> n, std::vector<double> beta, size_t trials, uint64_t seed, size_t R, size_t r,
           unsigned workers, const std::string &decoder, const std::string &input_decoder, int K,
           const std::string &variant) {
            ExperimentSpec s = make_spec(ExperimentKind::Memory, std::move(n), std::move(beta), trials, seed, R, r,
                                         workers, decoder, input_decoder, K, variant);
            MemoryResult res;
            {
                py::gil_scoped_release release;
                res = memory_experiment(s);
            }
            std::ostringstream agg, trials_out;
            write_memory_csv(agg, res.rows);
            write_trial_csv(trials_out, res.trials);
            return py::make_tuple(agg.str(), trials_out.str());
        },
        py::arg("n"), py::arg("beta"), py::arg("trials") = 40, py::arg("seed") = 0, py::arg("R") = 2000,
        py::arg("r") = 20, py::arg("workers") = 1, py::arg("decoder") = "cluster", py::arg("input_decoder") = "minw",
        py::arg("K") = 1, py::arg("variant") = "original");

    m.def(
        "fit_memory_csv", [](const std::string &path) { return fit_report(read_memory_csv(path)).to_json(); },
        py::arg("path"));
}
