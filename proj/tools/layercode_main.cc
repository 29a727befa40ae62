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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "layercode/bench.h"
#include "layercode/fit.h"

using namespace layercode;

namespace {

struct Options {
    std::vector<int> n;
    std::vector<double> p, beta;
    size_t trials = 0;
    size_t R = 2000, r = 20;
    uint64_t seed = 0;
    unsigned workers = 1;
    std::string decoder = "cluster";
    std::string input_decoder = "minw";
    int K = 1;
    std::string variant = "original";
    double t_max = std::numeric_limits<double>::infinity();
    uint64_t max_flips = std::numeric_limits<uint64_t>::max();
    std::string out;
    std::string in;
    std::string code;
};

void add_common(CLI::App *app, Options &o) {
    app->add_option("--n", o.n, "Input code sizes (odd)")->required()->delimiter(',');
    app->add_option("--trials", o.trials, "Trials per grid point");
    app->add_option("--R", o.R, "Sampled candidate codes per n");
    app->add_option("--r", o.r, "Codes kept per n");
    app->add_option("--seed", o.seed, "Master seed");
    app->add_option("--workers", o.workers, "Worker threads");
    app->add_option("--decoder", o.decoder, "cluster, concat or concat-modified")
        ->check(CLI::IsMember({"cluster", "concat", "concat-modified"}));
    app->add_option("--input-decoder", o.input_decoder, "minw or miny")->check(CLI::IsMember({"minw", "miny"}));
    app->add_option("--K", o.K, "Spacing between layers");
    app->add_option("--variant", o.variant, "original or extended");
    app->add_option("--out", o.out, "Output path")->required();
}

ExperimentSpec make_spec(const Options &o, ExperimentKind kind) {
    ExperimentSpec s;
    s.kind = kind;
    s.n_grid = o.n;
    s.p_grid = o.p;
    s.beta_grid = o.beta;
    s.trials = o.trials;
    s.candidates = o.R;
    s.kept = o.r;
    s.seed = o.seed;
    s.workers = o.workers;
    s.decoder = parse_decoder(o.decoder);
    s.input_decoder = o.input_decoder == "miny" ? InputDecoder::Kind::MinYWeight : InputDecoder::Kind::MinWeight;
    s.K = o.K;
    s.variant = parse_variant(o.variant);
    s.t_max = o.t_max;
    s.max_flips = o.max_flips;
    return s;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path);
    }
    return f;
}

// "run.csv" -> "run" + suffix.
std::string sibling(const std::string &path, const std::string &suffix) {
    std::filesystem::path p(path);
    return (p.parent_path() / p.stem()).string() + suffix;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Layer code construction, decoding and thermal memory benchmarks"};
    app.require_subcommand(1);
    Options o;

    auto *ens = app.add_subcommand("ensemble", "Sample the random input-code ensemble");
    ens->add_option("--n", o.n, "Input code sizes (odd)")->required()->delimiter(',');
    ens->add_option("--R", o.R, "Sampled candidates");
    ens->add_option("--r", o.r, "Codes kept");
    ens->add_option("--seed", o.seed, "Master seed");
    ens->add_option("--out", o.out, "Output directory")->required();

    auto *thr = app.add_subcommand("threshold", "Logical failure rate under i.i.d. bit flips");
    add_common(thr, o);
    thr->add_option("--p", o.p, "Physical error rates")->required()->delimiter(',');

    auto *mem = app.add_subcommand("memory", "Thermal memory time");
    add_common(mem, o);
    mem->add_option("--beta", o.beta, "Inverse temperatures")->required()->delimiter(',');
    mem->add_option("--t-max", o.t_max, "Censoring time");
    mem->add_option("--max-flips", o.max_flips, "Censor after this many flips");

    auto *fit = app.add_subcommand("fit", "Fit an aggregate memory CSV");
    fit->add_option("--in", o.in, "Aggregate memory CSV")->required();
    fit->add_option("--out", o.out, "FitReport JSON")->required();

    auto *bld = app.add_subcommand("build", "Build and export the layer code of an input code");
    bld->add_option("--code", o.code, "Input code file (HX/HZ blocks); Steane when omitted");
    bld->add_option("--K", o.K, "Spacing between layers");
    bld->add_option("--variant", o.variant, "original or extended");
    bld->add_option("--out", o.out, "Output prefix")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ens) {
            std::filesystem::create_directories(o.out);
            nlohmann::json manifest = nlohmann::json::array();
            for (int n : o.n) {
                ExperimentSpec s;
                s.seed = o.seed;
                s.candidates = o.R;
                s.kept = o.r;
                Ensemble e = experiment_ensemble(s, n);
                manifest.push_back(nlohmann::json::parse(e.manifest_json()));
                for (size_t i = 0; i < e.kept.size(); i++) {
                    auto f = open_out(o.out + "/code_n" + std::to_string(n) + "_" + std::to_string(i) + ".txt");
                    e.kept[i].code.write_text(f);
                }
                if (e.shortfall()) {
                    std::cerr << "n=" << n << ": only " << e.kept.size() << " of " << e.requested
                              << " codes survived the filter\n";
                }
            }
            open_out(o.out + "/manifest.json") << manifest.dump(2) << "\n";
        } else if (*thr) {
            if (o.trials == 0) {
                o.trials = 2000;
            }
            ExperimentSpec s = make_spec(o, ExperimentKind::Threshold);
            auto rows = threshold_experiment(s);
            auto f = open_out(o.out);
            write_threshold_csv(f, rows);
            open_out(sibling(o.out, ".json")) << s.to_json() << "\n";
        } else if (*mem) {
            if (o.trials == 0) {
                o.trials = 40;
            }
            ExperimentSpec s = make_spec(o, ExperimentKind::Memory);
            MemoryResult r = memory_experiment(s);
            auto f = open_out(o.out);
            write_memory_csv(f, r.rows);
            auto t = open_out(sibling(o.out, "_trials.csv"));
            write_trial_csv(t, r.trials);
            open_out(sibling(o.out, ".json")) << s.to_json() << "\n";
        } else if (*fit) {
            FitReport rep = fit_report(read_memory_csv(o.in));
            open_out(o.out) << rep.to_json() << "\n";
        } else if (*bld) {
            CssCode input = CssCode::steane();
            if (!o.code.empty()) {
                std::ifstream f(o.code);
                if (!f) {
                    throw std::runtime_error("cannot read " + o.code);
                }
                input = CssCode::read_text(f);
            }
            LayerCode L = build(input, o.K, parse_variant(o.variant));
            export_layer_code(L, o.out);
            std::cout << "qubits " << L.num_qubits() << " x_checks " << L.x_checks.size() << " z_checks "
                      << L.z_checks.size() << " k " << L.k() << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
