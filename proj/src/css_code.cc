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

#include "layercode/css_code.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace layercode {

namespace {

// Span membership for vectors of at most 64 bits.
struct WordSpan {
    std::vector<uint64_t> basis;

    void reduce(uint64_t &v) const {
        for (uint64_t b : basis) {
            uint64_t top = uint64_t{1} << (63 - std::countl_zero(b));
            if (v & top) {
                v ^= b;
            }
        }
    }
    bool insert(uint64_t v) {
        reduce(v);
        if (!v) {
            return false;
        }
        uint64_t top = uint64_t{1} << (63 - std::countl_zero(v));
        for (uint64_t &b : basis) {
            if (b & top) {
                b ^= v;
            }
        }
        basis.push_back(v);
        return true;
    }
    bool contains(uint64_t v) const {
        reduce(v);
        return v == 0;
    }
};

uint64_t to_word(const BitVector &v) {
    if (v.size() > 64) {
        throw std::invalid_argument("vector too long for a single-word oracle");
    }
    return v.size() ? v.words()[0] : 0;
}

WordSpan row_span(const BitMatrix &m) {
    WordSpan span;
    for (size_t r = 0; r < m.rows(); r++) {
        span.insert(to_word(m.row(r)));
    }
    return span;
}

// Column i of m as a word indexed by row.
std::vector<uint64_t> column_words(const BitMatrix &m) {
    if (m.rows() > 64) {
        throw std::invalid_argument("too many checks for a single-word oracle");
    }
    std::vector<uint64_t> cols(m.cols(), 0);
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            if (m.get(r, c)) {
                cols[c] |= uint64_t{1} << r;
            }
        }
    }
    return cols;
}

// Calls fn(indices) for every w-subset of [0, n) in lexicographic order
// until fn returns true. Returns whether fn stopped the enumeration.
template <typename Fn>
bool for_each_combination(size_t n, size_t w, Fn &&fn) {
    if (w > n) {
        return false;
    }
    std::vector<size_t> idx(w);
    for (size_t i = 0; i < w; i++) {
        idx[i] = i;
    }
    while (true) {
        if (fn(idx)) {
            return true;
        }
        size_t i = w;
        while (i > 0 && idx[i - 1] == n - w + i - 1) {
            i--;
        }
        if (i == 0) {
            return false;
        }
        idx[i - 1]++;
        for (size_t j = i; j < w; j++) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

std::optional<size_t> min_logical_weight(const BitMatrix &checks, const BitMatrix &stabs, size_t w_max) {
    std::vector<uint64_t> cols = column_words(checks);
    WordSpan span = row_span(stabs);
    size_t n = checks.cols();
    for (size_t w = 1; w <= std::min(w_max, n); w++) {
        bool found = for_each_combination(n, w, [&](const std::vector<size_t> &idx) {
            uint64_t syn = 0;
            uint64_t v = 0;
            for (size_t i : idx) {
                syn ^= cols[i];
                v |= uint64_t{1} << i;
            }
            return syn == 0 && !span.contains(v);
        });
        if (found) {
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace

CssCode::CssCode(BitMatrix hx_, BitMatrix hz_) : hx(std::move(hx_)), hz(std::move(hz_)) {
    if (hx.cols() != hz.cols()) {
        throw std::invalid_argument("HX and HZ must have the same number of columns");
    }
}

size_t CssCode::k() const {
    return n() - rank(hx) - rank(hz);
}

size_t CssCode::sparsity() const {
    size_t w = 0;
    for (const BitMatrix *m : {&hx, &hz}) {
        for (size_t r = 0; r < m->rows(); r++) {
            w = std::max(w, m->row_weight(r));
        }
        for (size_t c = 0; c < m->cols(); c++) {
            w = std::max(w, m->col_weight(c));
        }
    }
    return w;
}

CssCode CssCode::swapped() const {
    return CssCode(hz, hx);
}

CssCode CssCode::steane() {
    BitMatrix h = BitMatrix::from_strings({"1010101", "0110011", "0001111"});
    return CssCode(h, h);
}

void CssCode::write_text(std::ostream &out) const {
    out << "HX\n";
    hx.write_text(out);
    out << "HZ\n";
    hz.write_text(out);
}

CssCode CssCode::read_text(std::istream &in) {
    std::string label;
    if (!(in >> label) || label != "HX") {
        throw std::invalid_argument("code text: expected HX block");
    }
    BitMatrix hx = BitMatrix::read_text(in);
    if (!(in >> label) || label != "HZ") {
        throw std::invalid_argument("code text: expected HZ block");
    }
    BitMatrix hz = BitMatrix::read_text(in);
    return CssCode(std::move(hx), std::move(hz));
}

std::string CssCode::to_text() const {
    std::ostringstream ss;
    write_text(ss);
    return ss.str();
}

CssCode CssCode::from_text(const std::string &text) {
    std::istringstream ss(text);
    return read_text(ss);
}

ValidationReport validate(const CssCode &code, ValidateOptions options) {
    ValidationReport report;
    if (code.hx.cols() != code.hz.cols()) {
        report.violations.push_back({ViolationKind::Shape, "HX and HZ column counts differ"});
        return report;
    }
    BitMatrix prod = code.hx.multiply(code.hz.transposed());
    for (size_t i = 0; i < prod.rows(); i++) {
        for (size_t j = 0; j < prod.cols(); j++) {
            if (prod.get(i, j)) {
                report.violations.push_back(
                    {ViolationKind::Orthogonality,
                     "X check " + std::to_string(i) + " anticommutes with Z check " + std::to_string(j)});
            }
        }
    }
    if (options.check_rates) {
        size_t n = code.n();
        for (auto [name, rows] : {std::pair<const char *, size_t>{"X", code.num_x_checks()},
                                  std::pair<const char *, size_t>{"Z", code.num_z_checks()}}) {
            if (rows == 0 || 2 * rows >= n) {
                report.violations.push_back({ViolationKind::RateOutOfRange,
                                             std::string("rate of ") + name + " checks outside (0, 1/2)"});
            }
        }
    }
    if (options.require_logicals && report.ok() && code.k() == 0) {
        report.violations.push_back({ViolationKind::NoLogicals, "code encodes no logical qubits"});
    }
    return report;
}

CssCode sample_css(size_t n, size_t num_x, size_t num_z, Rng &rng) {
    if (num_x == 0 || num_z == 0 || 2 * num_x >= n || 2 * num_z >= n) {
        throw std::invalid_argument("sample_css: check rates must lie in (0, 1/2)");
    }
    BitMatrix hz(num_z, n);
    std::bernoulli_distribution coin(0.5);
    for (size_t r = 0; r < num_z; r++) {
        for (size_t c = 0; c < n; c++) {
            if (coin(rng)) {
                hz.flip(r, c);
            }
        }
    }
    BitMatrix hx = sample_orthogonal(hz, num_x, rng);
    return CssCode(std::move(hx), std::move(hz));
}

std::optional<std::pair<size_t, size_t>> min_distance(const CssCode &code, size_t w_max) {
    if (code.k() == 0) {
        throw std::domain_error("min_distance: code has no logical qubits");
    }
    auto dz = min_logical_weight(code.hx, code.hz, w_max);
    auto dx = min_logical_weight(code.hz, code.hx, w_max);
    if (!dz || !dx) {
        return std::nullopt;
    }
    return std::make_pair(*dx, *dz);
}

size_t energy_barrier_bruteforce(const CssCode &code, PauliType type) {
    const BitMatrix &checks = type == PauliType::Z ? code.hx : code.hz;
    const BitMatrix &stabs = type == PauliType::Z ? code.hz : code.hx;
    size_t n = code.n();
    if (n > 20) {
        throw std::invalid_argument("energy_barrier_bruteforce: n must be at most 20");
    }
    if (code.k() == 0) {
        throw std::domain_error("energy_barrier_bruteforce: code has no logical qubits");
    }
    std::vector<uint64_t> cols = column_words(checks);
    WordSpan span = row_span(stabs);
    size_t states = size_t{1} << n;
    std::vector<uint64_t> syn(states, 0);
    std::vector<uint8_t> energy(states, 0);
    for (size_t v = 1; v < states; v++) {
        syn[v] = syn[v & (v - 1)] ^ cols[std::countr_zero(v)];
        energy[v] = (uint8_t)std::popcount(syn[v]);
    }
    const uint8_t unseen = 255;
    std::vector<uint8_t> best(states, unseen);
    std::vector<std::vector<uint32_t>> buckets(checks.rows() + 1);
    best[0] = 0;
    buckets[0].push_back(0);
    for (size_t b = 0; b < buckets.size(); b++) {
        // Buckets only grow at index >= b while b is processed.
        for (size_t q = 0; q < buckets[b].size(); q++) {
            uint32_t v = buckets[b][q];
            if (best[v] != b) {
                continue;
            }
            if (v != 0 && syn[v] == 0 && !span.contains(v)) {
                return b;
            }
            for (size_t i = 0; i < n; i++) {
                uint32_t u = v ^ (uint32_t{1} << i);
                uint8_t c = std::max<uint8_t>((uint8_t)b, energy[u]);
                if (c < best[u]) {
                    best[u] = c;
                    buckets[c].push_back(u);
                }
            }
        }
    }
    throw std::logic_error("energy_barrier_bruteforce: no logical reached");
}

YSet build_y_set(const BitMatrix &hz) {
    YSet out;
    std::map<std::string, bool> seen;
    for (size_t r = 0; r < hz.rows(); r++) {
        BitVector prefix(hz.cols());
        for (size_t cut = 1; cut <= hz.cols(); cut++) {
            if (!hz.get(r, cut - 1)) {
                continue;
            }
            prefix.flip(cut - 1);
            std::string key = prefix.to_string();
            if (seen.emplace(key, true).second) {
                out.push_back({prefix, r, cut});
            }
        }
    }
    return out;
}

namespace {

// Breadth-first search over syndrome space. parent[s] = (previous syndrome,
// generator index). Stops once `target` is reached, or explores everything.
struct SyndromeBfs {
    std::unordered_map<uint64_t, std::pair<uint64_t, uint32_t>> parent;
    std::vector<uint64_t> order;

    SyndromeBfs(const std::vector<uint64_t> &gens, std::optional<uint64_t> target) {
        parent.emplace(0, std::make_pair(uint64_t{0}, UINT32_MAX));
        order.push_back(0);
        if (target && *target == 0) {
            return;
        }
        for (size_t q = 0; q < order.size(); q++) {
            uint64_t s = order[q];
            for (uint32_t g = 0; g < gens.size(); g++) {
                uint64_t t = s ^ gens[g];
                if (parent.emplace(t, std::make_pair(s, g)).second) {
                    order.push_back(t);
                    if (target && t == *target) {
                        return;
                    }
                }
            }
        }
    }

    std::vector<uint32_t> path_to(uint64_t s) const {
        std::vector<uint32_t> gens;
        while (s != 0) {
            auto [prev, g] = parent.at(s);
            gens.push_back(g);
            s = prev;
        }
        return gens;
    }
};

struct YGenerators {
    std::vector<uint64_t> syndromes;
    std::vector<BitVector> vectors;
};

YGenerators y_generators(const CssCode &code) {
    std::vector<uint64_t> cols = column_words(code.hx);
    YGenerators g;
    std::map<uint64_t, bool> seen;
    for (const YElement &y : build_y_set(code.hz)) {
        uint64_t s = 0;
        for (size_t i : y.vec.support()) {
            s ^= cols[i];
        }
        if (s != 0 && seen.emplace(s, true).second) {
            g.syndromes.push_back(s);
            g.vectors.push_back(y.vec);
        }
    }
    return g;
}

}  // namespace

BitVector decode_min_y_weight(const CssCode &code, const BitVector &syndrome) {
    if (syndrome.size() != code.num_x_checks()) {
        throw std::invalid_argument("decode_min_y_weight: syndrome length mismatch");
    }
    YGenerators gens = y_generators(code);
    uint64_t target = to_word(syndrome);
    SyndromeBfs bfs(gens.syndromes, target);
    if (!bfs.parent.count(target)) {
        throw std::domain_error("decode_min_y_weight: syndrome not reachable from the Y set");
    }
    BitVector out(code.n());
    for (uint32_t g : bfs.path_to(target)) {
        out ^= gens.vectors[g];
    }
    return out;
}

BitVector decode_min_weight(const CssCode &code, const BitVector &syndrome) {
    if (syndrome.size() != code.num_x_checks()) {
        throw std::invalid_argument("decode_min_weight: syndrome length mismatch");
    }
    size_t n = code.n();
    if (n > 24) {
        throw std::invalid_argument("decode_min_weight: n must be at most 24");
    }
    std::vector<uint64_t> cols = column_words(code.hx);
    uint64_t target = to_word(syndrome);
    SyndromeBfs bfs(cols, target);
    if (!bfs.parent.count(target)) {
        throw std::domain_error("decode_min_weight: syndrome not in the column space");
    }
    size_t w = bfs.path_to(target).size();
    BitVector out(n);
    for_each_combination(n, w, [&](const std::vector<size_t> &idx) {
        uint64_t s = 0;
        for (size_t i : idx) {
            s ^= cols[i];
        }
        if (s != target) {
            return false;
        }
        for (size_t i : idx) {
            out.flip(i);
        }
        return true;
    });
    return out;
}

InputDecoder::InputDecoder(const CssCode &code, Kind kind)
    : kind_(kind), n_(code.n()), num_checks_(code.num_x_checks()) {
    if (num_checks_ > 20) {
        throw std::invalid_argument("InputDecoder: too many checks for a lookup table");
    }
    table_index_.assign(size_t{1} << num_checks_, -1);
    if (kind == Kind::MinYWeight) {
        YGenerators gens = y_generators(code);
        SyndromeBfs bfs(gens.syndromes, std::nullopt);
        for (uint64_t s : bfs.order) {
            BitVector c(n_);
            if (s != 0) {
                auto [prev, g] = bfs.parent.at(s);
                c = corrections_[table_index_[prev]] ^ gens.vectors[g];
            }
            table_index_[s] = (int64_t)corrections_.size();
            corrections_.push_back(std::move(c));
        }
        return;
    }
    std::vector<uint64_t> cols = column_words(code.hx);
    size_t reachable = size_t{1} << rank(code.hx);
    for (size_t w = 0; w <= n_ && corrections_.size() < reachable; w++) {
        for_each_combination(n_, w, [&](const std::vector<size_t> &idx) {
            uint64_t s = 0;
            for (size_t i : idx) {
                s ^= cols[i];
            }
            if (table_index_[s] < 0) {
                BitVector c(n_);
                for (size_t i : idx) {
                    c.flip(i);
                }
                table_index_[s] = (int64_t)corrections_.size();
                corrections_.push_back(std::move(c));
            }
            return corrections_.size() == reachable;
        });
    }
}

BitVector InputDecoder::decode(const BitVector &syndrome) const {
    if (syndrome.size() != num_checks_) {
        throw std::invalid_argument("InputDecoder: syndrome length mismatch");
    }
    int64_t idx = table_index_[to_word(syndrome)];
    if (idx < 0) {
        throw std::domain_error("InputDecoder: syndrome not realizable");
    }
    return corrections_[idx];
}

SymplecticBasis logical_pairs(const CssCode &code) {
    auto reps = [](const BitMatrix &checks, const BitMatrix &stabs) {
        RowReducer reducer(stabs.cols());
        for (size_t r = 0; r < stabs.rows(); r++) {
            reducer.insert(stabs.row(r));
        }
        std::vector<BitVector> out;
        BitMatrix ker = kernel_basis(checks);
        for (size_t r = 0; r < ker.rows(); r++) {
            if (reducer.insert(ker.row(r))) {
                out.push_back(ker.row(r));
            }
        }
        return out;
    };
    SymplecticBasis basis;
    basis.z = reps(code.hx, code.hz);
    std::vector<BitVector> xs = reps(code.hz, code.hx);
    size_t k = basis.z.size();
    if (xs.size() != k) {
        throw std::logic_error("logical_pairs: X and Z logical counts differ");
    }
    // Transform the X representatives so the pairing becomes the identity.
    BitMatrix pt(k, k);
    for (size_t a = 0; a < k; a++) {
        for (size_t b = 0; b < k; b++) {
            if (basis.z[b].dot(xs[a])) {
                pt.flip(a, b);
            }
        }
    }
    auto inv = inverse(pt);
    if (!inv) {
        throw std::logic_error("logical_pairs: degenerate pairing");
    }
    for (size_t b = 0; b < k; b++) {
        BitVector x(code.n());
        for (size_t c = 0; c < k; c++) {
            if (inv->get(b, c)) {
                x ^= xs[c];
            }
        }
        basis.x.push_back(std::move(x));
    }
    return basis;
}

}  // namespace layercode
