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

#ifndef LAYERCODE_THERMAL_H
#define LAYERCODE_THERMAL_H

#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "layercode/f2.h"
#include "layercode/layer_code.h"
#include "layercode/rng.h"

namespace layercode {

/// Ising spins under H = -1/2 sum_s prod_{q in s} sigma_q, with single-flip
/// Glauber rates 1 / (1 + exp(beta dE)) sampled by the n-fold way.
class SpinSystem {
   public:
    SpinSystem(size_t num_spins, std::vector<std::vector<uint32_t>> checks, double beta);

    size_t num_spins() const {
        return spin_.size();
    }
    size_t num_checks() const {
        return checks_.size();
    }
    double beta() const {
        return beta_;
    }
    int spin(size_t i) const {
        return spin_[i];
    }
    /// H(flip_i(sigma)) - H(sigma).
    int delta_e(size_t i) const {
        return delta_[i];
    }
    /// 2 H, an integer.
    int64_t twice_energy() const;
    /// Checks with product -1.
    size_t violated() const {
        return violated_;
    }
    /// Glauber rate of a flip with energy change dE.
    double rate(int de) const;

    void flip(size_t i);
    /// Picks a spin with probability proportional to its rate, flips it and
    /// returns it together with an Exp(1) / total_rate waiting time.
    std::pair<size_t, double> nfold_step(Rng &rng);
    double total_rate() const;

    /// Spins equal to -1, as an F2 error vector.
    BitVector error() const;
    /// Violated checks.
    BitVector syndrome() const;
    /// Recomputes every cached quantity from the spins and compares.
    bool consistent() const;
    /// Number of spins in each dE class, keyed by dE + max_degree.
    std::vector<size_t> class_sizes() const;
    int max_degree() const {
        return max_degree_;
    }

   private:
    void move_class(size_t i, int old_de);

    std::vector<std::vector<uint32_t>> checks_;
    std::vector<std::vector<uint32_t>> spin_checks_;
    std::vector<int8_t> spin_;
    std::vector<int8_t> product_;
    std::vector<int32_t> delta_;
    size_t violated_ = 0;
    double beta_;
    int max_degree_ = 0;
    std::vector<double> rates_;                   // by dE + max_degree
    std::vector<std::vector<uint32_t>> members_;  // by dE + max_degree
    std::vector<uint32_t> slot_;                  // position of a spin in its class
};

/// X correction for a Z-check syndrome.
using SyndromeDecoder = std::function<BitVector(const BitVector &syndrome)>;

struct TrialConfig {
    double beta = 1.0;
    uint64_t seed = 0;
    double t_max = std::numeric_limits<double>::infinity();
    /// After a decode at time t the next one is due at 1.1 t.
    double decode_growth = 0.1;
    uint64_t max_flips = std::numeric_limits<uint64_t>::max();
};

struct TrialResult {
    /// Failure time, or the cutoff when censored.
    double t_fail = 0;
    bool censored = false;
    uint64_t flips = 0;
    uint64_t decodes = 0;
};

/// Runs Glauber dynamics from the all-up state on the Z-checks of `code`
/// until a decode leaves a residual that anticommutes with one of
/// `z_logicals`.
TrialResult run_trial(const LayerCode &code, const std::vector<BitVector> &z_logicals, const TrialConfig &config,
                      const SyndromeDecoder &decoder);

struct GibbsCheck {
    double chi2 = 0;
    int dof = 0;
    double p_value = 0;
    uint64_t samples = 0;
};

/// Samples the chain at a fixed time interval and compares the histogram
/// over 20 equal-probability bins of states with the exact Gibbs law.
/// At most 20 spins.
GibbsCheck gibbs_check(size_t num_spins, const std::vector<std::vector<uint32_t>> &checks, double beta,
                       uint64_t steps, uint64_t seed, int bins = 20);

}  // namespace layercode

#endif
