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

#ifndef LAYERCODE_BENCH_H
#define LAYERCODE_BENCH_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "layercode/cluster_decoder.h"
#include "layercode/css_code.h"
#include "layercode/layer_code.h"
#include "layercode/rng.h"
#include "layercode/thermal.h"

namespace layercode {

enum class DecoderKind : uint8_t { Cluster, Concat, ConcatModified };
std::string decoder_name(DecoderKind d);
DecoderKind parse_decoder(const std::string &s);

enum class ExperimentKind : uint8_t { Threshold, Memory };

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Threshold;
    std::vector<int> n_grid;
    std::vector<double> p_grid;     // threshold
    std::vector<double> beta_grid;  // memory
    size_t trials = 40;
    size_t candidates = 2000;  // R
    size_t kept = 20;          // r
    uint64_t seed = 0;
    unsigned workers = 1;
    DecoderKind decoder = DecoderKind::Cluster;
    InputDecoder::Kind input_decoder = InputDecoder::Kind::MinWeight;
    int K = 1;
    Variant variant = Variant::OriginalTermination;
    double t_max = std::numeric_limits<double>::infinity();
    uint64_t max_flips = std::numeric_limits<uint64_t>::max();

    /// Throws std::invalid_argument on empty grids or zero trials.
    void validate() const;
    std::string to_json() const;
};

struct EnsembleEntry {
    CssCode code;
    size_t sample_index = 0;
    size_t distance = 0;
};

struct Ensemble {
    size_t n = 0;
    uint64_t seed = 0;
    size_t candidates = 0;
    size_t requested = 0;
    std::vector<EnsembleEntry> kept;
    size_t survivors = 0;  // codes passing the filter
    size_t shortfall() const {
        return kept.size() < requested ? requested - kept.size() : 0;
    }
    std::string manifest_json() const;
};

/// Samples R codes with (n-1)/2 checks of each type, keeps those with k = 1
/// and d_X = d_Z, and returns the r of largest distance (sample order breaks
/// ties). A shortfall is reported through Ensemble::shortfall.
Ensemble build_ensemble(size_t n, size_t R, size_t r, Rng &rng);
/// The ensemble an experiment uses for code size n.
Ensemble experiment_ensemble(const ExperimentSpec &spec, int n);

uint64_t code_hash(const CssCode &code);

/// A layer code together with everything needed to decode X errors on it.
class LayerCodeDecoder {
   public:
    LayerCodeDecoder(const CssCode &input, int K, Variant variant, DecoderKind decoder,
                     InputDecoder::Kind input_kind);

    const LayerCode &code() const {
        return *code_;
    }
    const std::vector<BitVector> &z_logicals() const {
        return z_logicals_;
    }
    /// X correction for a Z-check syndrome.
    BitVector decode(const BitVector &syndrome) const;
    /// True when error + correction anticommutes with a logical Z.
    bool logical_failure(const BitVector &error, const BitVector &correction) const;

   private:
    std::unique_ptr<LayerCode> code_;
    DecoderKind decoder_;
    std::unique_ptr<DecodingHypergraph> graph_;
    std::unique_ptr<InputDecoder> input_;
    std::vector<BitVector> z_logicals_;
};

struct ThresholdRow {
    int n = 0;
    double p = 0;
    size_t trials = 0;
    size_t failures = 0;
    double rate = 0;
    double stderr_ = 0;
};

struct MemoryTrial {
    size_t code_id = 0;
    int n = 0;
    double beta = 0;
    uint64_t seed = 0;
    double t_fail = 0;
    bool censored = false;
    uint64_t flips = 0;
    uint64_t decodes = 0;
};

struct MemoryRow {
    int n = 0;
    double beta = 0;
    double mean_tfail = 0;
    double sem = 0;
    size_t trials = 0;
    size_t censored = 0;
    double mean_tfail_uncensored = 0;
    double sem_uncensored = 0;
};

struct MemoryResult {
    std::vector<MemoryTrial> trials;
    std::vector<MemoryRow> rows;
};

/// I.i.d. bit flips at each p; trial t uses kept code t mod r.
std::vector<ThresholdRow> threshold_experiment(const ExperimentSpec &spec);
MemoryResult memory_experiment(const ExperimentSpec &spec);
/// Mean and standard error of the trial log, grouped by (n, beta) in first
/// appearance order.
std::vector<MemoryRow> aggregate_memory(const std::vector<MemoryTrial> &trials);

void write_threshold_csv(std::ostream &out, const std::vector<ThresholdRow> &rows);
void write_trial_csv(std::ostream &out, const std::vector<MemoryTrial> &trials);
void write_memory_csv(std::ostream &out, const std::vector<MemoryRow> &rows);

/// Runs fn(0..count-1) on `workers` threads; rethrows the first exception.
void parallel_for(size_t count, unsigned workers, const std::function<void(size_t)> &fn);

}  // namespace layercode

#endif
