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

#include "layercode/matching.h"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <utility>

namespace layercode {

namespace {

constexpr size_t kDpLimit = 16;

int l1(GridPoint a, GridPoint b) {
    return std::abs(a.u - b.u) + std::abs(a.v - b.v);
}

void push_pair_path(std::vector<GridStep> &steps, GridPoint a, GridPoint b) {
    for (int v = std::min(a.v, b.v); v < std::max(a.v, b.v); v++) {
        steps.push_back({false, a.u, v});
    }
    for (int u = std::min(a.u, b.u); u < std::max(a.u, b.u); u++) {
        steps.push_back({true, u, b.v});
    }
}

void push_boundary_path(std::vector<GridStep> &steps, const MatchingProblem &pr, GridPoint a, Side side) {
    switch (side) {
        case Side::LowU:
            for (int u = -1; u < a.u; u++) {
                steps.push_back({true, u, a.v});
            }
            break;
        case Side::HighU:
            for (int u = a.u; u < pr.nu; u++) {
                steps.push_back({true, u, a.v});
            }
            break;
        case Side::LowV:
            for (int v = -1; v < a.v; v++) {
                steps.push_back({false, a.u, v});
            }
            break;
        case Side::HighV:
            for (int v = a.v; v < pr.nv; v++) {
                steps.push_back({false, a.u, v});
            }
            break;
    }
}

int side_distance(const MatchingProblem &pr, GridPoint p, Side s) {
    switch (s) {
        case Side::LowU:
            return p.u + 1;
        case Side::HighU:
            return pr.nu - p.u;
        case Side::LowV:
            return p.v + 1;
        case Side::HighV:
            return pr.nv - p.v;
    }
    return -1;
}

// Exact optimum by dynamic programming over subsets; the lowest unmatched
// excitation goes to the boundary or to a partner.
std::vector<int> solve_dp(const std::vector<std::vector<int>> &d, const std::vector<int> &bdist) {
    size_t m = d.size();
    size_t full = (size_t{1} << m) - 1;
    constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
    std::vector<int64_t> best(full + 1, kInf);
    std::vector<int8_t> choice(full + 1, -2);
    best[0] = 0;
    for (size_t s = 1; s <= full; s++) {
        int i = __builtin_ctzll(s);
        size_t rest = s & ~(size_t{1} << i);
        if (bdist[i] >= 0 && best[rest] < kInf && best[rest] + bdist[i] < best[s]) {
            best[s] = best[rest] + bdist[i];
            choice[s] = -1;
        }
        for (size_t j = i + 1; j < m; j++) {
            if (!(rest >> j & 1)) {
                continue;
            }
            size_t r2 = rest & ~(size_t{1} << j);
            if (best[r2] < kInf && best[r2] + d[i][j] < best[s]) {
                best[s] = best[r2] + d[i][j];
                choice[s] = (int8_t)j;
            }
        }
    }
    if (best[full] >= kInf) {
        throw OddParityNoBoundary();
    }
    std::vector<int> partner(m, -1);
    for (size_t s = full; s;) {
        int i = __builtin_ctzll(s);
        int j = choice[s];
        s &= ~(size_t{1} << i);
        if (j >= 0) {
            partner[i] = j;
            partner[j] = i;
            s &= ~(size_t{1} << j);
        }
    }
    return partner;
}

// Maximum-weight matching on a general graph (Edmonds' blossom algorithm,
// primal-dual, O(n^3)). Vertex duals are stored doubled, so with integer
// weights every quantity stays integral.
class WeightedBlossom {
   public:
    WeightedBlossom(int nvertex, std::vector<std::array<int, 2>> edges, std::vector<int64_t> weights)
        : n_(nvertex), edges_(std::move(edges)), w_(std::move(weights)) {
        int m = (int)edges_.size();
        endpoint_.resize(2 * m);
        neighbend_.assign(n_, {});
        for (int k = 0; k < m; k++) {
            endpoint_[2 * k] = edges_[k][0];
            endpoint_[2 * k + 1] = edges_[k][1];
            neighbend_[edges_[k][0]].push_back(2 * k + 1);
            neighbend_[edges_[k][1]].push_back(2 * k);
        }
        int64_t maxweight = 0;
        for (int64_t x : w_) {
            maxweight = std::max(maxweight, x);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        std::iota(inblossom_.begin(), inblossom_.end(), 0);
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        std::iota(blossombase_.begin(), blossombase_.begin() + n_, 0);
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, {});
        has_bestedges_.assign(2 * n_, 0);
        for (int b = 2 * n_ - 1; b >= n_; b--) {
            unused_.push_back(b);
        }
        dualvar_.assign(2 * n_, 0);
        std::fill(dualvar_.begin(), dualvar_.begin() + n_, maxweight);
        allowedge_.assign(m, 0);
    }

    /// mate[v] = matched vertex or -1.
    std::vector<int> solve() {
        for (int stage = 0; stage < n_; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; b++) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = 0;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = 1;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }
                int deltatype = 1;
                int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                int deltaedge = -1, deltablossom = -1;
                for (int v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        int64_t d = slack(bestedge_[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        int64_t kslack = slack(bestedge_[b]);
                        if (kslack % 2) {
                            throw std::logic_error("blossom: odd slack between S-blossoms");
                        }
                        int64_t d = kslack / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                for (int v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = 1;
                    int i = edges_[deltaedge][0], j = edges_[deltaedge][1];
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = 1;
                    queue_.push_back(edges_[deltaedge][0]);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int b = n_; b < 2 * n_; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int> out(n_, -1);
        for (int v = 0; v < n_; v++) {
            if (mate_[v] >= 0) {
                out[v] = endpoint_[mate_[v]];
            }
        }
        return out;
    }

   private:
    int64_t slack(int k) const {
        return dualvar_[edges_[k][0]] + dualvar_[edges_[k][1]] - 2 * w_[k];
    }

    void leaves(int b, std::vector<int> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            leaves(t, out);
        }
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            for (int v : leaves(b)) {
                queue_.push_back(v);
            }
        } else if (t == 2) {
            int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[k][0], w = edges_[k][1];
        int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for (int x : leaves(b)) {
            if (label_[inblossom_[x]] == 2) {
                queue_.push_back(x);
            }
            inblossom_[x] = b;
        }
        std::vector<int> bestedgeto(2 * n_, -1);
        for (int sub : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[sub]) {
                for (int x : leaves(sub)) {
                    std::vector<int> list;
                    for (int p : neighbend_[x]) {
                        list.push_back(p / 2);
                    }
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(blossombestedges_[sub]);
            }
            for (const auto &nblist : nblists) {
                for (int kk : nblist) {
                    int i = edges_[kk][0], j = edges_[kk][1];
                    if (inblossom_[j] == b) {
                        std::swap(i, j);
                    }
                    int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                        bestedgeto[bj] = kk;
                    }
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = 0;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int kk : bestedgeto) {
            if (kk != -1) {
                blossombestedges_[b].push_back(kk);
            }
        }
        has_bestedges_[b] = 1;
        bestedge_[b] = -1;
        for (int kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
                bestedge_[b] = kk;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int v : leaves(s)) {
                    inblossom_[v] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto &childs = blossomchilds_[b];
            const auto &endps = blossomendps_[b];
            int len = (int)childs.size();
            auto at = [len](const std::vector<int> &xs, int j) {
                return xs[((j % len) + len) % len];
            };
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = (int)(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = 1;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = 1;
                j += jstep;
            }
            int bv = at(childs, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int v : leaves(bv)) {
                    if (label_[v] != 0) {
                        found = v;
                        break;
                    }
                }
                if (found >= 0) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= n_) {
            augment_blossom(t, v);
        }
        auto &childs = blossomchilds_[b];
        auto &endps = blossomendps_[b];
        int len = (int)childs.size();
        auto idx = [len](int j) {
            return ((j % len) + len) % len;
        };
        int i = (int)(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[idx(j)];
            int p = endps[idx(j - endptrick)] ^ endptrick;
            if (t >= n_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = childs[idx(j)];
            if (t >= n_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
    }

    void augment_matching(int k) {
        int v = edges_[k][0], w = edges_[k][1];
        for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
            while (true) {
                int bs = inblossom_[s];
                if (bs >= n_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int n_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<int64_t> w_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_, queue_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<uint8_t> has_bestedges_, allowedge_;
    std::vector<int64_t> dualvar_;
};

// Blossom matching on excitations plus one mirror per excitation; mirrors
// pair freely with each other at zero cost.
std::vector<int> solve_blossom(const std::vector<std::vector<int>> &d, const std::vector<int> &bdist) {
    int m = (int)d.size();
    bool mirrors = bdist[0] >= 0;
    int nodes = mirrors ? 2 * m : m;
    int64_t max_cost = 1;
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            max_cost = std::max<int64_t>(max_cost, d[i][j]);
        }
        max_cost = std::max<int64_t>(max_cost, bdist[i]);
    }
    // Any perfect matching outweighs every non-perfect one. Weights are kept
    // even so that slack halving stays exact.
    const int64_t big = max_cost * nodes + 1;
    std::vector<std::array<int, 2>> edges;
    std::vector<int64_t> weights;
    for (int i = 0; i < m; i++) {
        for (int j = i + 1; j < m; j++) {
            edges.push_back({i, j});
            weights.push_back(2 * (big - d[i][j]));
            if (mirrors) {
                edges.push_back({m + i, m + j});
                weights.push_back(2 * big);
            }
        }
        if (mirrors) {
            edges.push_back({i, m + i});
            weights.push_back(2 * (big - bdist[i]));
        }
    }
    std::vector<int> mate = WeightedBlossom(nodes, std::move(edges), std::move(weights)).solve();
    std::vector<int> partner(m, -1);
    for (int i = 0; i < m; i++) {
        if (mate[i] < 0) {
            throw std::logic_error("mwpm: blossom matching is not perfect");
        }
        partner[i] = mate[i] < m ? mate[i] : -1;
    }
    return partner;
}

}  // namespace

std::pair<int, Side> nearest_boundary(const MatchingProblem &problem, GridPoint p) {
    int best = -1;
    Side side = Side::LowU;
    for (Side s : {Side::LowU, Side::LowV, Side::HighU, Side::HighV}) {
        if (!problem.boundaries.allows(s)) {
            continue;
        }
        int dist = side_distance(problem, p, s);
        if (best < 0 || dist < best) {
            best = dist;
            side = s;
        }
    }
    return {best, side};
}

MatchingResult mwpm(const MatchingProblem &problem, MatchingAlgorithm algorithm) {
    MatchingResult result;
    size_t m = problem.excitations.size();
    if (m == 0) {
        return result;
    }
    if (m % 2 && !problem.boundaries.any()) {
        throw OddParityNoBoundary();
    }
    std::vector<std::vector<int>> d(m, std::vector<int>(m, 0));
    std::vector<int> bdist(m, -1);
    std::vector<Side> bside(m, Side::LowU);
    for (size_t i = 0; i < m; i++) {
        for (size_t j = 0; j < m; j++) {
            d[i][j] = l1(problem.excitations[i], problem.excitations[j]);
        }
        std::tie(bdist[i], bside[i]) = nearest_boundary(problem, problem.excitations[i]);
    }
    if (algorithm == MatchingAlgorithm::Auto) {
        algorithm = m <= kDpLimit ? MatchingAlgorithm::SubsetDp : MatchingAlgorithm::Blossom;
    }
    if (algorithm == MatchingAlgorithm::SubsetDp && m > 24) {
        throw std::invalid_argument("mwpm: too many excitations for the subset DP");
    }
    result.partner = algorithm == MatchingAlgorithm::SubsetDp ? solve_dp(d, bdist) : solve_blossom(d, bdist);
    result.boundary_side.assign(m, Side::LowU);
    for (size_t i = 0; i < m; i++) {
        int j = result.partner[i];
        if (j < 0) {
            result.boundary_side[i] = bside[i];
            result.total_weight += bdist[i];
            push_boundary_path(result.steps, problem, problem.excitations[i], bside[i]);
        } else if ((size_t)j > i) {
            result.total_weight += d[i][j];
            push_pair_path(result.steps, problem.excitations[i], problem.excitations[j]);
        }
    }
    return result;
}

MatchingResult match_to_side(const MatchingProblem &problem, Side side) {
    MatchingResult result;
    for (GridPoint p : problem.excitations) {
        result.partner.push_back(-1);
        result.boundary_side.push_back(side);
        result.total_weight += side_distance(problem, p, side);
        push_boundary_path(result.steps, problem, p, side);
    }
    return result;
}

GridView::GridView(const Patch &patch, bool dual) : p_(&patch), dual_(dual) {
}

int32_t GridView::site(int u, int v) const {
    return dual_ ? p_->face(u, v) : p_->vertex(u, v);
}

int32_t GridView::step_qubit(const GridStep &s) const {
    const int su = p_->s_u(), sv = p_->s_v();
    if (!dual_) {
        return s.along_u ? p_->u_edge(s.u + su, s.v) : p_->v_edge(s.u, s.v + sv);
    }
    return s.along_u ? p_->v_edge(s.u + 1 - su, s.v) : p_->u_edge(s.u, s.v + 1 - sv);
}

bool GridView::has_exit(Side s) const {
    bool rough = (s == Side::LowU || s == Side::HighU) ? p_->rough_u : p_->rough_v;
    return dual_ ? !rough : rough;
}

BoundarySet GridView::exits(BoundarySet wanted) const {
    for (int s = 0; s < 4; s++) {
        wanted.open[s] = wanted.open[s] && has_exit((Side)s);
    }
    return wanted;
}

}  // namespace layercode
