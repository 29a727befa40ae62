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

// Slow, independent reference computations shared by the tests.

#ifndef LAYERCODE_TESTS_ORACLES_H
#define LAYERCODE_TESTS_ORACLES_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "layercode/css_code.h"
#include "layercode/f2.h"
#include "layercode/matching.h"

namespace layercode::testing {

inline BitVector mask_vector(size_t n, uint64_t mask) {
    BitVector v(n);
    for (size_t i = 0; i < n; i++) {
        if (mask >> i & 1) {
            v.flip(i);
        }
    }
    return v;
}

// Distribution of the rank of `rows` uniform vectors in F2^dim.
inline std::vector<double> uniform_rank_distribution(size_t rows, size_t dim) {
    std::vector<double> p(std::min(rows, dim) + 1, 0.0);
    p[0] = 1;
    for (size_t r = 0; r < rows; r++) {
        std::vector<double> q(p.size(), 0.0);
        for (size_t s = 0; s < p.size(); s++) {
            if (p[s] == 0) {
                continue;
            }
            double stay = std::ldexp(1.0, (int)s - (int)dim);
            q[s] += p[s] * stay;
            if (s + 1 < p.size()) {
                q[s + 1] += p[s] * (1 - stay);
            }
        }
        p = q;
    }
    return p;
}

// Probability that HZ uniform (mz x n) and HX with mx rows uniform in ker HZ
// leave at least one logical qubit.
inline double prob_css_has_logicals(size_t n, size_t mx, size_t mz) {
    double total = 0;
    auto pz = uniform_rank_distribution(mz, n);
    for (size_t rz = 0; rz < pz.size(); rz++) {
        auto px = uniform_rank_distribution(mx, n - rz);
        for (size_t rx = 0; rx < px.size(); rx++) {
            if (rx + rz + 1 <= n) {
                total += pz[rz] * px[rx];
            }
        }
    }
    return total;
}

// Smallest weight of v with checks v = 0 and v outside rowspace(stabs).
inline size_t brute_min_logical_weight(const BitMatrix &checks, const BitMatrix &stabs) {
    size_t n = checks.cols(), best = SIZE_MAX;
    for (uint64_t m = 1; m < (uint64_t{1} << n); m++) {
        BitVector v = mask_vector(n, m);
        if (v.weight() < best && !checks.multiply(v).any() && !in_rowspace(stabs, v)) {
            best = v.weight();
        }
    }
    return best;
}

inline size_t brute_min_weight_with_syndrome(const BitMatrix &h, const BitVector &syndrome) {
    size_t n = h.cols(), best = SIZE_MAX;
    for (uint64_t m = 0; m < (uint64_t{1} << n); m++) {
        BitVector v = mask_vector(n, m);
        if (v.weight() < best && h.multiply(v) == syndrome) {
            best = v.weight();
        }
    }
    return best;
}

// For each bound b = 0, 1, ... floods the hypercube from 0 through states
// whose syndrome weight is at most b and stops when a nontrivial logical is
// reached.
inline size_t threshold_path_barrier(const BitMatrix &checks, const BitMatrix &stabs) {
    size_t n = checks.cols();
    size_t states = size_t{1} << n;
    std::vector<size_t> energy(states);
    std::vector<uint8_t> logical(states, 0);
    for (uint64_t m = 0; m < states; m++) {
        BitVector v = mask_vector(n, m);
        energy[m] = checks.multiply(v).weight();
        logical[m] = m != 0 && energy[m] == 0 && !in_rowspace(stabs, v);
    }
    for (size_t b = 0; b <= checks.rows(); b++) {
        std::vector<uint8_t> seen(states, 0);
        std::vector<uint64_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            uint64_t v = stack.back();
            stack.pop_back();
            if (logical[v]) {
                return b;
            }
            for (size_t i = 0; i < n; i++) {
                uint64_t u = v ^ (uint64_t{1} << i);
                if (!seen[u] && energy[u] <= b) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
    }
    return SIZE_MAX;
}

// A nontrivial logical supported only on qubits outside every check; such a
// logical has zero energy barrier.
inline bool uncovered_logical_exists(const BitMatrix &checks, const BitMatrix &stabs) {
    std::vector<size_t> free;
    for (size_t c = 0; c < checks.cols(); c++) {
        if (checks.col_weight(c) == 0) {
            free.push_back(c);
        }
    }
    for (uint64_t m = 1; m < (uint64_t{1} << free.size()); m++) {
        BitVector v(checks.cols());
        for (size_t i = 0; i < free.size(); i++) {
            if (m >> i & 1) {
                v.flip(free[i]);
            }
        }
        if (!in_rowspace(stabs, v)) {
            return true;
        }
    }
    return false;
}

// Smallest number (at most w_max) of Y elements whose XOR equals d.
inline size_t y_weight_upper_bound(const YSet &y, const BitVector &d, size_t w_max) {
    if (!d.any()) {
        return 0;
    }
    for (size_t i = 0; i < y.size(); i++) {
        if (y[i].vec == d) {
            return 1;
        }
    }
    if (w_max >= 2) {
        for (size_t i = 0; i < y.size(); i++) {
            for (size_t j = i + 1; j < y.size(); j++) {
                if ((y[i].vec ^ y[j].vec) == d) {
                    return 2;
                }
            }
        }
    }
    return SIZE_MAX;
}

// Minimum-weight matching by recursion over who the first excitation pairs
// with: another excitation or its nearest open boundary.
inline int64_t brute_matching_weight(const MatchingProblem &p) {
    size_t m = p.excitations.size();
    std::vector<int64_t> to_boundary(m, -1);
    for (size_t i = 0; i < m; i++) {
        int64_t best = -1;
        const GridPoint &g = p.excitations[i];
        const int64_t d[4] = {g.u + 1, p.nu - g.u, g.v + 1, p.nv - g.v};
        for (int s = 0; s < 4; s++) {
            if (p.boundaries.open[s] && (best < 0 || d[s] < best)) {
                best = d[s];
            }
        }
        to_boundary[i] = best;
    }
    const int64_t inf = INT64_MAX / 4;
    std::vector<uint8_t> used(m, 0);
    auto rec = [&](auto &&self) -> int64_t {
        size_t i = 0;
        while (i < m && used[i]) {
            i++;
        }
        if (i == m) {
            return 0;
        }
        used[i] = 1;
        int64_t best = inf;
        if (to_boundary[i] >= 0) {
            best = std::min(best, to_boundary[i] + self(self));
        }
        for (size_t j = i + 1; j < m; j++) {
            if (used[j]) {
                continue;
            }
            used[j] = 1;
            int64_t d = std::abs(p.excitations[i].u - p.excitations[j].u) +
                        std::abs(p.excitations[i].v - p.excitations[j].v);
            best = std::min(best, d + self(self));
            used[j] = 0;
        }
        used[i] = 0;
        return best;
    };
    int64_t r = rec(rec);
    return r >= inf ? -1 : r;
}

}  // namespace layercode::testing

#endif
