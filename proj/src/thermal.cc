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

#include "layercode/thermal.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace layercode {

SpinSystem::SpinSystem(size_t num_spins, std::vector<std::vector<uint32_t>> checks, double beta)
    : checks_(std::move(checks)), spin_checks_(num_spins), spin_(num_spins, 1), beta_(beta) {
    for (uint32_t s = 0; s < checks_.size(); s++) {
        for (uint32_t q : checks_[s]) {
            if (q >= num_spins) {
                throw std::invalid_argument("SpinSystem: check refers to a missing spin");
            }
            spin_checks_[q].push_back(s);
        }
    }
    product_.assign(checks_.size(), 1);
    delta_.resize(num_spins);
    for (size_t i = 0; i < num_spins; i++) {
        delta_[i] = (int32_t)spin_checks_[i].size();
        max_degree_ = std::max(max_degree_, delta_[i]);
    }
    rates_.resize(2 * max_degree_ + 1);
    for (int j = -max_degree_; j <= max_degree_; j++) {
        rates_[j + max_degree_] = rate(j);
    }
    members_.assign(2 * max_degree_ + 1, {});
    slot_.resize(num_spins);
    for (size_t i = 0; i < num_spins; i++) {
        auto &m = members_[delta_[i] + max_degree_];
        slot_[i] = (uint32_t)m.size();
        m.push_back((uint32_t)i);
    }
}

double SpinSystem::rate(int de) const {
    return 1.0 / (1.0 + std::exp(beta_ * de));
}

int64_t SpinSystem::twice_energy() const {
    int64_t e = 0;
    for (int8_t p : product_) {
        e -= p;
    }
    return e;
}

void SpinSystem::move_class(size_t i, int old_de) {
    auto &from = members_[old_de + max_degree_];
    uint32_t pos = slot_[i];
    uint32_t last = from.back();
    from[pos] = last;
    slot_[last] = pos;
    from.pop_back();
    auto &to = members_[delta_[i] + max_degree_];
    slot_[i] = (uint32_t)to.size();
    to.push_back((uint32_t)i);
}

void SpinSystem::flip(size_t i) {
    spin_[i] = (int8_t)-spin_[i];
    for (uint32_t s : spin_checks_[i]) {
        product_[s] = (int8_t)-product_[s];
        violated_ += product_[s] < 0 ? 1 : -1;
        for (uint32_t q : checks_[s]) {
            int old = delta_[q];
            delta_[q] += 2 * product_[s];
            move_class(q, old);
        }
    }
}

double SpinSystem::total_rate() const {
    double total = 0;
    for (size_t c = 0; c < members_.size(); c++) {
        total += rates_[c] * (double)members_[c].size();
    }
    return total;
}

std::pair<size_t, double> SpinSystem::nfold_step(Rng &rng) {
    double total = total_rate();
    if (!(total > 0)) {
        throw std::logic_error("nfold_step: every flip has zero rate");
    }
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    size_t cls = 0;
    double acc = 0;
    for (; cls < members_.size(); cls++) {
        acc += rates_[cls] * (double)members_[cls].size();
        if (r < acc) {
            break;
        }
    }
    if (cls == members_.size()) {
        // Rounding at the top end; take the last nonempty class.
        do {
            cls--;
        } while (members_[cls].empty());
    }
    const auto &m = members_[cls];
    size_t i = m[std::uniform_int_distribution<size_t>(0, m.size() - 1)(rng)];
    flip(i);
    double dt = std::exponential_distribution<double>(1.0)(rng) / total;
    return {i, dt};
}

BitVector SpinSystem::error() const {
    BitVector e(spin_.size());
    for (size_t i = 0; i < spin_.size(); i++) {
        if (spin_[i] < 0) {
            e.flip(i);
        }
    }
    return e;
}

BitVector SpinSystem::syndrome() const {
    BitVector s(checks_.size());
    for (size_t c = 0; c < checks_.size(); c++) {
        if (product_[c] < 0) {
            s.flip(c);
        }
    }
    return s;
}

bool SpinSystem::consistent() const {
    size_t violated = 0;
    std::vector<int8_t> product(checks_.size());
    for (size_t s = 0; s < checks_.size(); s++) {
        int p = 1;
        for (uint32_t q : checks_[s]) {
            p *= spin_[q];
        }
        product[s] = (int8_t)p;
        violated += p < 0;
        if (product[s] != product_[s]) {
            return false;
        }
    }
    if (violated != violated_) {
        return false;
    }
    for (size_t i = 0; i < spin_.size(); i++) {
        int d = 0;
        for (uint32_t s : spin_checks_[i]) {
            d += product[s];
        }
        if (d != delta_[i] || members_[d + max_degree_][slot_[i]] != i) {
            return false;
        }
    }
    return true;
}

std::vector<size_t> SpinSystem::class_sizes() const {
    std::vector<size_t> out;
    for (const auto &m : members_) {
        out.push_back(m.size());
    }
    return out;
}

TrialResult run_trial(const LayerCode &code, const std::vector<BitVector> &z_logicals, const TrialConfig &config,
                      const SyndromeDecoder &decoder) {
    SpinSystem sys(code.num_qubits(), code.checks_z, config.beta);
    Rng rng(config.seed);
    TrialResult result;
    double t = 0;
    double t_dec = 0;
    while (true) {
        if (result.flips >= config.max_flips) {
            result.censored = true;
            result.t_fail = t;
            return result;
        }
        double total = sys.total_rate();
        if (!(total > 0)) {
            result.censored = true;
            result.t_fail = config.t_max;
            return result;
        }
        auto [spin, dt] = sys.nfold_step(rng);
        (void)spin;
        if (t + dt > config.t_max) {
            result.censored = true;
            result.t_fail = config.t_max;
            return result;
        }
        result.flips++;
        t += dt;
        t_dec -= dt;
        if (t_dec <= 0) {
            result.decodes++;
            BitVector residual = sys.error() ^ decoder(sys.syndrome());
            for (const BitVector &z : z_logicals) {
                if (z.dot(residual)) {
                    result.t_fail = t;
                    return result;
                }
            }
            t_dec = config.decode_growth * t;
        }
    }
}

GibbsCheck gibbs_check(size_t num_spins, const std::vector<std::vector<uint32_t>> &checks, double beta,
                       uint64_t steps, uint64_t seed, int bins) {
    if (num_spins > 20 || num_spins == 0) {
        throw std::invalid_argument("gibbs_check: needs between 1 and 20 spins");
    }
    const size_t states = size_t{1} << num_spins;
    // Exact Gibbs weights; bit i of a state set means spin i is down.
    std::vector<double> weight(states);
    for (size_t x = 0; x < states; x++) {
        int e2 = 0;
        for (const auto &s : checks) {
            int parity = 0;
            for (uint32_t q : s) {
                parity ^= (int)(x >> q & 1);
            }
            e2 -= parity ? -1 : 1;
        }
        weight[x] = std::exp(-beta * 0.5 * e2);
    }
    double z = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::vector<size_t> order(states);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return weight[a] < weight[b];
    });
    std::vector<int> bin_of(states);
    std::vector<double> expected_p(bins, 0.0);
    double acc = 0;
    for (size_t x : order) {
        double p = weight[x] / z;
        int b = std::min(bins - 1, (int)std::floor((acc + 0.5 * p) * bins));
        bin_of[x] = b;
        expected_p[b] += p;
        acc += p;
    }

    SpinSystem sys(num_spins, checks, beta);
    Rng rng(seed);
    // Snapshot spacing: about five flips per spin, from a short burn-in.
    double burn = 0;
    const uint64_t burn_steps = std::min<uint64_t>(steps / 10 + 1, 100000);
    for (uint64_t k = 0; k < burn_steps; k++) {
        burn += sys.nfold_step(rng).second;
    }
    const double tau = 5.0 * (double)num_spins * burn / (double)burn_steps;
    std::vector<uint64_t> observed(bins, 0);
    size_t state = 0;
    for (size_t i = 0; i < num_spins; i++) {
        if (sys.spin(i) < 0) {
            state |= size_t{1} << i;
        }
    }
    double t = 0, next = tau;
    GibbsCheck out;
    for (uint64_t k = 0; k < steps; k++) {
        auto [i, dt] = sys.nfold_step(rng);
        // The chain sits in `state` during [t, t + dt).
        while (next < t + dt) {
            observed[bin_of[state]]++;
            out.samples++;
            next += tau;
        }
        t += dt;
        state ^= size_t{1} << i;
    }
    for (int b = 0; b < bins; b++) {
        double e = expected_p[b] * (double)out.samples;
        if (e > 0) {
            out.chi2 += (observed[b] - e) * (observed[b] - e) / e;
            out.dof++;
        }
    }
    out.dof -= 1;
    out.p_value = out.dof > 0 ? boost::math::gamma_q(0.5 * out.dof, 0.5 * out.chi2) : 1.0;
    return out;
}

}  // namespace layercode
