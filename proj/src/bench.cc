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

#include "layercode/bench.h"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "layercode/concat_decoder.h"

namespace layercode {

namespace {

// Stream tags keep the seed families of different experiment parts apart.
constexpr uint64_t kEnsembleTag = 1;
constexpr uint64_t kThresholdTag = 2;
constexpr uint64_t kMemoryTag = 3;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string hex64(uint64_t x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, x);
    return buf;
}

struct MeanSem {
    double mean = 0, sem = 0;
};

MeanSem mean_sem(const std::vector<double> &xs) {
    MeanSem r;
    if (xs.empty()) {
        return r;
    }
    double m = 0;
    for (double x : xs) {
        m += x;
    }
    m /= (double)xs.size();
    r.mean = m;
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) {
            ss += (x - m) * (x - m);
        }
        r.sem = std::sqrt(ss / (double)(xs.size() - 1)) / std::sqrt((double)xs.size());
    }
    return r;
}

}  // namespace

std::string decoder_name(DecoderKind d) {
    switch (d) {
        case DecoderKind::Cluster:
            return "cluster";
        case DecoderKind::Concat:
            return "concat";
        case DecoderKind::ConcatModified:
            return "concat-modified";
    }
    return "?";
}

DecoderKind parse_decoder(const std::string &s) {
    if (s == "cluster") {
        return DecoderKind::Cluster;
    }
    if (s == "concat") {
        return DecoderKind::Concat;
    }
    if (s == "concat-modified") {
        return DecoderKind::ConcatModified;
    }
    throw std::invalid_argument("unknown decoder: " + s);
}

void ExperimentSpec::validate() const {
    if (n_grid.empty()) {
        throw std::invalid_argument("experiment: empty n grid");
    }
    if (kind == ExperimentKind::Threshold && p_grid.empty()) {
        throw std::invalid_argument("experiment: empty p grid");
    }
    if (kind == ExperimentKind::Memory && beta_grid.empty()) {
        throw std::invalid_argument("experiment: empty beta grid");
    }
    if (trials == 0 || kept == 0 || candidates == 0) {
        throw std::invalid_argument("experiment: trials, R and r must be positive");
    }
    for (int n : n_grid) {
        if (n < 3 || n % 2 == 0) {
            throw std::invalid_argument("experiment: n must be odd and at least 3");
        }
    }
    for (double p : p_grid) {
        if (!(p >= 0 && p <= 1)) {
            throw std::invalid_argument("experiment: p outside [0, 1]");
        }
    }
}

std::string ExperimentSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind == ExperimentKind::Threshold ? "threshold" : "memory";
    j["n"] = n_grid;
    j["p"] = p_grid;
    j["beta"] = beta_grid;
    j["trials"] = trials;
    j["R"] = candidates;
    j["r"] = kept;
    j["seed"] = seed;
    j["workers"] = workers;
    j["decoder"] = decoder_name(decoder);
    j["input_decoder"] = input_decoder == InputDecoder::Kind::MinWeight ? "minw" : "miny";
    j["K"] = K;
    j["variant"] = variant_name(variant);
    j["t_max"] = std::isfinite(t_max) ? nlohmann::json(t_max) : nlohmann::json("inf");
    j["max_flips"] = max_flips;
    return j.dump();
}

uint64_t code_hash(const CssCode &code) {
    // FNV-1a over the text form.
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : code.to_text()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string Ensemble::manifest_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["seed"] = seed;
    j["candidates"] = candidates;
    j["requested"] = requested;
    j["survivors"] = survivors;
    j["shortfall"] = shortfall();
    j["kept"] = nlohmann::json::array();
    for (size_t i = 0; i < kept.size(); i++) {
        j["kept"].push_back({{"id", i},
                             {"sample_index", kept[i].sample_index},
                             {"distance", kept[i].distance},
                             {"hash", hex64(code_hash(kept[i].code))}});
    }
    return j.dump(2);
}

Ensemble build_ensemble(size_t n, size_t R, size_t r, Rng &rng) {
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("build_ensemble: n must be odd and at least 3");
    }
    Ensemble e;
    e.n = n;
    e.candidates = R;
    e.requested = r;
    const size_t m = (n - 1) / 2;
    std::vector<EnsembleEntry> pool;
    for (size_t i = 0; i < R; i++) {
        CssCode c = sample_css(n, m, m, rng);
        if (c.k() != 1) {
            continue;
        }
        auto d = min_distance(c, n);
        if (!d || d->first != d->second) {
            continue;
        }
        pool.push_back({std::move(c), i, d->first});
    }
    e.survivors = pool.size();
    std::stable_sort(pool.begin(), pool.end(), [](const EnsembleEntry &a, const EnsembleEntry &b) {
        return a.distance > b.distance;
    });
    if (pool.size() > r) {
        pool.resize(r);
    }
    e.kept = std::move(pool);
    return e;
}

Ensemble experiment_ensemble(const ExperimentSpec &spec, int n) {
    uint64_t seed = derive_seed(spec.seed, {kEnsembleTag, (uint64_t)n});
    Rng rng(seed);
    Ensemble e = build_ensemble((size_t)n, spec.candidates, spec.kept, rng);
    e.seed = seed;
    if (e.kept.empty()) {
        throw std::runtime_error("experiment: no code with k = 1 and d_X = d_Z among the candidates for n = " +
                                 std::to_string(n));
    }
    return e;
}

LayerCodeDecoder::LayerCodeDecoder(const CssCode &input, int K, Variant variant, DecoderKind decoder,
                                   InputDecoder::Kind input_kind)
    : code_(std::make_unique<LayerCode>(build(input, K, variant))), decoder_(decoder) {
    if (decoder == DecoderKind::Cluster) {
        graph_ = std::make_unique<DecodingHypergraph>(build_hypergraph(*code_));
    } else {
        // X errors are decoded through the input code with X and Z exchanged.
        input_ = std::make_unique<InputDecoder>(input.swapped(), input_kind);
    }
    z_logicals_ = logical_basis(*code_).z;
}

BitVector LayerCodeDecoder::decode(const BitVector &syndrome) const {
    switch (decoder_) {
        case DecoderKind::Cluster:
            return cluster_decode(*graph_, syndrome);
        case DecoderKind::Concat:
            return concat_decode(*code_, syndrome, *input_, PauliType::X);
        case DecoderKind::ConcatModified:
            return concat_decode_modified(*code_, syndrome, *input_, PauliType::X);
    }
    throw std::logic_error("unknown decoder");
}

bool LayerCodeDecoder::logical_failure(const BitVector &error, const BitVector &correction) const {
    BitVector residual = error ^ correction;
    for (const BitVector &z : z_logicals_) {
        if (z.dot(residual)) {
            return true;
        }
    }
    return false;
}

void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)> &fn) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            while (!stop) {
                size_t i = next++;
                if (i >= count) {
                    return;
                }
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    stop = true;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

namespace {

// Decoders for every kept code of every n in the grid.
std::vector<std::vector<std::unique_ptr<LayerCodeDecoder>>> build_decoders(const ExperimentSpec &spec) {
    std::vector<std::vector<std::unique_ptr<LayerCodeDecoder>>> out;
    for (int n : spec.n_grid) {
        Ensemble e = experiment_ensemble(spec, n);
        auto &row = out.emplace_back(e.kept.size());
        parallel_for(e.kept.size(), spec.workers, [&](size_t i) {
            row[i] = std::make_unique<LayerCodeDecoder>(e.kept[i].code, spec.K, spec.variant, spec.decoder,
                                                        spec.input_decoder);
        });
    }
    return out;
}

}  // namespace

std::vector<ThresholdRow> threshold_experiment(const ExperimentSpec &spec) {
    spec.validate();
    auto decoders = build_decoders(spec);
    const size_t np = spec.p_grid.size(), nt = spec.trials;
    std::vector<uint8_t> failed(spec.n_grid.size() * np * nt, 0);
    parallel_for(failed.size(), spec.workers, [&](size_t task) {
        size_t t = task % nt, pi = task / nt % np, ni = task / nt / np;
        const auto &codes = decoders[ni];
        const LayerCodeDecoder &dec = *codes[t % codes.size()];
        const LayerCode &L = dec.code();
        Rng rng(derive_seed(spec.seed, {kThresholdTag, (uint64_t)spec.n_grid[ni], pi, t}));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        BitVector error(L.num_qubits());
        for (size_t q = 0; q < L.num_qubits(); q++) {
            if (unif(rng) < spec.p_grid[pi]) {
                error.flip(q);
            }
        }
        BitVector syndrome = L.z_syndrome(error);
        BitVector correction = dec.decode(syndrome);
        if (L.z_syndrome(correction) != syndrome) {
            throw std::logic_error("threshold_experiment: correction does not reproduce the syndrome");
        }
        failed[task] = dec.logical_failure(error, correction);
    });
    std::vector<ThresholdRow> rows;
    for (size_t ni = 0; ni < spec.n_grid.size(); ni++) {
        for (size_t pi = 0; pi < np; pi++) {
            ThresholdRow r;
            r.n = spec.n_grid[ni];
            r.p = spec.p_grid[pi];
            r.trials = nt;
            for (size_t t = 0; t < nt; t++) {
                r.failures += failed[(ni * np + pi) * nt + t];
            }
            r.rate = (double)r.failures / (double)nt;
            r.stderr_ = std::sqrt(r.rate * (1 - r.rate) / (double)nt);
            rows.push_back(r);
        }
    }
    return rows;
}

MemoryResult memory_experiment(const ExperimentSpec &spec) {
    spec.validate();
    auto decoders = build_decoders(spec);
    const size_t nb = spec.beta_grid.size(), nt = spec.trials;
    MemoryResult result;
    result.trials.resize(spec.n_grid.size() * nb * nt);
    parallel_for(result.trials.size(), spec.workers, [&](size_t task) {
        size_t t = task % nt, bi = task / nt % nb, ni = task / nt / nb;
        const auto &codes = decoders[ni];
        const size_t code_id = t % codes.size();
        const LayerCodeDecoder &dec = *codes[code_id];
        TrialConfig config;
        config.beta = spec.beta_grid[bi];
        config.seed = derive_seed(spec.seed, {kMemoryTag, (uint64_t)spec.n_grid[ni], bi, t});
        config.t_max = spec.t_max;
        config.max_flips = spec.max_flips;
        TrialResult r = run_trial(dec.code(), dec.z_logicals(), config, [&](const BitVector &s) {
            return dec.decode(s);
        });
        result.trials[task] = {code_id, spec.n_grid[ni], config.beta, config.seed, r.t_fail, r.censored, r.flips,
                               r.decodes};
    });
    result.rows = aggregate_memory(result.trials);
    return result;
}

std::vector<MemoryRow> aggregate_memory(const std::vector<MemoryTrial> &trials) {
    std::vector<std::pair<int, double>> keys;
    std::map<std::pair<int, double>, std::vector<const MemoryTrial *>> groups;
    for (const MemoryTrial &t : trials) {
        auto key = std::make_pair(t.n, t.beta);
        if (!groups.count(key)) {
            keys.push_back(key);
        }
        groups[key].push_back(&t);
    }
    std::vector<MemoryRow> rows;
    for (const auto &key : keys) {
        std::vector<double> all, uncensored;
        MemoryRow row;
        row.n = key.first;
        row.beta = key.second;
        for (const MemoryTrial *t : groups[key]) {
            all.push_back(t->t_fail);
            if (t->censored) {
                row.censored++;
            } else {
                uncensored.push_back(t->t_fail);
            }
        }
        row.trials = all.size();
        MeanSem a = mean_sem(all), u = mean_sem(uncensored);
        row.mean_tfail = a.mean;
        row.sem = a.sem;
        row.mean_tfail_uncensored = u.mean;
        row.sem_uncensored = u.sem;
        rows.push_back(row);
    }
    return rows;
}

void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows) {
    out << "n,p,trials,failures,rate,stderr\n";
    for (const ThresholdRow &r : rows) {
        out << r.n << ',' << fmt(r.p) << ',' << r.trials << ',' << r.failures << ',' << fmt(r.rate) << ','
            << fmt(r.stderr_) << '\n';
    }
}

void write_trial_csv(std::ostream &out, const std::vector<MemoryTrial> &trials) {
    out << "code_id,n,beta,seed,t_fail,censored,flips,decodes\n";
    for (const MemoryTrial &t : trials) {
        out << t.code_id << ',' << t.n << ',' << fmt(t.beta) << ',' << t.seed << ',' << fmt(t.t_fail) << ','
            << (t.censored ? 1 : 0) << ',' << t.flips << ',' << t.decodes << '\n';
    }
}

void write_memory_csv(std::ostream &out, const std::vector<MemoryRow> &rows) {
    out << "n,beta,mean_tfail,sem,trials,censored,mean_tfail_uncensored,sem_uncensored\n";
    for (const MemoryRow &r : rows) {
        out << r.n << ',' << fmt(r.beta) << ',' << fmt(r.mean_tfail) << ',' << fmt(r.sem) << ',' << r.trials << ','
            << r.censored << ',' << fmt(r.mean_tfail_uncensored) << ',' << fmt(r.sem_uncensored) << '\n';
    }
}

}  // namespace layercode
