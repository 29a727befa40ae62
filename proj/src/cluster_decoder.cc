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

#include "layercode/cluster_decoder.h"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace layercode {

void DecodingHypergraph::finalize() {
    vertex_edges.assign(num_vertices, {});
    boundary_vertex.assign(num_vertices, 0);
    edge_type.assign(num_edges(), {});
    for (uint32_t e = 0; e < num_edges(); e++) {
        for (uint32_t v : edge_vertices[e]) {
            vertex_edges[v].push_back(e);
            if (edge_class[e] == EdgeClass::SmoothBoundary || edge_class[e] == EdgeClass::Defect) {
                boundary_vertex[v] = 1;
            }
        }
        if (edge_class[e] == EdgeClass::Defect) {
            auto &t = edge_type[e];
            for (uint32_t v : edge_vertices[e]) {
                t.push_back(region[v]);
            }
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
        }
    }
}

DecodingHypergraph make_hypergraph(size_t num_vertices, std::vector<std::vector<uint32_t>> edges,
                                   std::vector<uint32_t> region, const std::vector<uint32_t> &rough) {
    DecodingHypergraph g;
    g.num_vertices = num_vertices;
    g.region = std::move(region);
    g.edge_vertices = std::move(edges);
    std::vector<uint8_t> is_rough(g.edge_vertices.size(), 0);
    for (uint32_t e : rough) {
        is_rough.at(e) = 1;
    }
    for (uint32_t e = 0; e < g.edge_vertices.size(); e++) {
        auto &vs = g.edge_vertices[e];
        std::sort(vs.begin(), vs.end());
        switch (vs.size()) {
            case 0:
                g.edge_class.push_back(EdgeClass::Ignored);
                break;
            case 1:
                g.edge_class.push_back(EdgeClass::SmoothBoundary);
                break;
            case 2:
                g.edge_class.push_back(is_rough[e] ? EdgeClass::RoughBoundary : EdgeClass::Regional);
                break;
            default:
                g.edge_class.push_back(EdgeClass::Defect);
        }
    }
    g.finalize();
    return g;
}

DecodingHypergraph build_hypergraph(const LayerCode &code) {
    std::vector<uint32_t> rough;
    for (uint32_t q = 0; q < code.num_qubits(); q++) {
        const QubitInfo &info = code.qubits[q];
        const Patch &p = code.patches[info.patch];
        bool dangling = info.along_u ? p.rough_u && (info.a == 0 || info.a == p.neu - 1)
                                     : p.rough_v && (info.b == 0 || info.b == p.nev - 1);
        if (dangling && code.qubit_z_checks[q].size() == 2) {
            rough.push_back(q);
        }
    }
    return make_hypergraph(code.z_checks.size(), code.qubit_z_checks, code.region_of_z_check, rough);
}

namespace {

// Scratch state sized to the graph, reused across cluster checks.
struct Scratch {
    std::vector<int32_t> local;  // vertex -> position in cluster, or -1
    std::vector<int32_t> comp;   // position -> subregion id

    explicit Scratch(size_t n) : local(n, -1) {
    }
    void load(const std::vector<uint32_t> &vertices) {
        for (size_t i = 0; i < vertices.size(); i++) {
            local[vertices[i]] = (int32_t)i;
        }
    }
    void unload(const std::vector<uint32_t> &vertices) {
        for (uint32_t v : vertices) {
            local[v] = -1;
        }
    }
    bool inside(const DecodingHypergraph &g, uint32_t e) const {
        for (uint32_t v : g.edge_vertices[e]) {
            if (local[v] < 0) {
                return false;
            }
        }
        return !g.edge_vertices[e].empty();
    }
};

bool connects(EdgeClass c) {
    return c == EdgeClass::Regional || c == EdgeClass::RoughBoundary;
}

ClusterAnalysis analyze_loaded(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                               const std::vector<uint8_t> &excited, Scratch &s) {
    ClusterAnalysis a;
    s.comp.assign(vertices.size(), -1);
    std::vector<uint32_t> queue;
    for (size_t i = 0; i < vertices.size(); i++) {
        if (s.comp[i] >= 0) {
            continue;
        }
        int32_t id = (int32_t)a.subregions.size();
        a.subregions.emplace_back();
        a.parity.push_back(0);
        a.has_smooth_edge.push_back(0);
        queue.assign(1, (uint32_t)i);
        s.comp[i] = id;
        for (size_t head = 0; head < queue.size(); head++) {
            uint32_t v = vertices[queue[head]];
            a.subregions[id].push_back(v);
            a.parity[id] ^= excited[v];
            for (uint32_t e : g.vertex_edges[v]) {
                EdgeClass c = g.edge_class[e];
                if (c == EdgeClass::SmoothBoundary) {
                    a.has_smooth_edge[id] = 1;
                } else if (connects(c)) {
                    for (uint32_t u : g.edge_vertices[e]) {
                        int32_t lu = s.local[u];
                        if (lu >= 0 && s.comp[lu] < 0) {
                            s.comp[lu] = id;
                            queue.push_back((uint32_t)lu);
                        }
                    }
                }
            }
        }
        std::sort(a.subregions[id].begin(), a.subregions[id].end());
    }

    // Defect edges fully inside the cluster, one per parity footprint.
    std::map<std::vector<uint32_t>, uint32_t> reps;
    std::vector<uint32_t> footprint;
    for (uint32_t v : vertices) {
        for (uint32_t e : g.vertex_edges[v]) {
            if (g.edge_class[e] != EdgeClass::Defect || g.edge_vertices[e].front() != v || !s.inside(g, e)) {
                continue;
            }
            footprint.clear();
            for (uint32_t u : g.edge_vertices[e]) {
                footprint.push_back((uint32_t)s.comp[s.local[u]]);
            }
            std::sort(footprint.begin(), footprint.end());
            std::vector<uint32_t> odd;
            for (size_t i = 0; i < footprint.size();) {
                size_t j = i;
                while (j < footprint.size() && footprint[j] == footprint[i]) {
                    j++;
                }
                if ((j - i) % 2) {
                    odd.push_back(footprint[i]);
                }
                i = j;
            }
            if (odd.empty()) {
                continue;
            }
            auto it = reps.find(odd);
            if (it == reps.end()) {
                reps.emplace(std::move(odd), e);
            } else {
                it->second = std::min(it->second, e);
            }
        }
    }
    for (auto &[fp, e] : reps) {
        a.defect_reps.push_back(e);
        a.rep_footprint.push_back(fp);
    }

    // M^T x = p over the subregions that cannot dump an excitation on a
    // smooth boundary.
    std::vector<uint32_t> rows;
    for (uint32_t c = 0; c < a.subregions.size(); c++) {
        if (!a.has_smooth_edge[c]) {
            rows.push_back(c);
        }
    }
    std::vector<int32_t> row_of(a.subregions.size(), -1);
    for (size_t r = 0; r < rows.size(); r++) {
        row_of[rows[r]] = (int32_t)r;
    }
    bool any_odd = false;
    BitVector p(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        if (a.parity[rows[r]]) {
            p.flip(r);
            any_odd = true;
        }
    }
    if (!any_odd) {
        a.assignment = std::vector<uint32_t>{};
        return a;
    }
    BitMatrix m(rows.size(), a.defect_reps.size());
    for (size_t d = 0; d < a.defect_reps.size(); d++) {
        for (uint32_t c : a.rep_footprint[d]) {
            if (row_of[c] >= 0) {
                m.flip(row_of[c], d);
            }
        }
    }
    std::optional<BitVector> x = solve(m, p);
    if (x) {
        std::vector<uint32_t> flips;
        for (size_t d : x->support()) {
            flips.push_back(a.defect_reps[d]);
        }
        a.assignment = std::move(flips);
    }
    return a;
}

std::vector<uint32_t> extract_loaded(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                                     std::vector<uint8_t> &excited, const std::vector<uint32_t> &assignment,
                                     Scratch &s) {
    std::vector<uint32_t> flips;
    auto flip_edge = [&](uint32_t e) {
        flips.push_back(e);
        for (uint32_t v : g.edge_vertices[e]) {
            excited[v] ^= 1;
        }
    };
    for (uint32_t e : assignment) {
        flip_edge(e);
    }
    ClusterAnalysis a = analyze_loaded(g, vertices, excited, s);
    std::vector<int32_t> parent_edge(vertices.size(), -1);
    std::vector<uint8_t> seen(vertices.size(), 0);
    std::vector<uint32_t> order;
    for (size_t c = 0; c < a.subregions.size(); c++) {
        const auto &sub = a.subregions[c];
        order.clear();
        if (a.parity[c]) {
            if (!a.has_smooth_edge[c]) {
                throw std::logic_error("extract_correction: odd subregion without a smooth boundary");
            }
            // Virtual root joined to the subregion through its smooth edges.
            for (uint32_t v : sub) {
                for (uint32_t e : g.vertex_edges[v]) {
                    if (g.edge_class[e] == EdgeClass::SmoothBoundary && !seen[s.local[v]]) {
                        seen[s.local[v]] = 1;
                        parent_edge[s.local[v]] = (int32_t)e;
                        order.push_back(v);
                    }
                }
            }
        } else {
            auto it = std::find_if(sub.begin(), sub.end(), [&](uint32_t v) {
                return excited[v];
            });
            if (it == sub.end()) {
                continue;
            }
            seen[s.local[*it]] = 1;
            order.push_back(*it);
        }
        for (size_t head = 0; head < order.size(); head++) {
            uint32_t v = order[head];
            for (uint32_t e : g.vertex_edges[v]) {
                if (!connects(g.edge_class[e])) {
                    continue;
                }
                for (uint32_t u : g.edge_vertices[e]) {
                    int32_t lu = s.local[u];
                    if (lu >= 0 && !seen[lu]) {
                        seen[lu] = 1;
                        parent_edge[lu] = (int32_t)e;
                        order.push_back(u);
                    }
                }
            }
        }
        for (size_t t = order.size(); t-- > 0;) {
            uint32_t v = order[t];
            if (excited[v]) {
                int32_t e = parent_edge[s.local[v]];
                if (e < 0) {
                    throw std::logic_error("extract_correction: unpaired excitation at the tree root");
                }
                flip_edge((uint32_t)e);
            }
        }
    }
    std::sort(flips.begin(), flips.end());
    std::vector<uint32_t> net;
    for (size_t i = 0; i < flips.size();) {
        size_t j = i;
        while (j < flips.size() && flips[j] == flips[i]) {
            j++;
        }
        if ((j - i) % 2) {
            net.push_back(flips[i]);
        }
        i = j;
    }
    return net;
}

}  // namespace

ClusterAnalysis analyze_cluster(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                                const std::vector<uint8_t> &excited) {
    Scratch s(g.num_vertices);
    s.load(vertices);
    ClusterAnalysis a = analyze_loaded(g, vertices, excited, s);
    s.unload(vertices);
    return a;
}

std::optional<std::vector<uint32_t>> is_correctable(const DecodingHypergraph &g,
                                                    const std::vector<uint32_t> &vertices,
                                                    const std::vector<uint8_t> &excited) {
    return analyze_cluster(g, vertices, excited).assignment;
}

std::vector<uint32_t> extract_correction(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                                         const std::vector<uint8_t> &excited,
                                         const std::vector<uint32_t> &assignment) {
    Scratch s(g.num_vertices);
    s.load(vertices);
    std::vector<uint8_t> work = excited;
    std::vector<uint32_t> out = extract_loaded(g, vertices, work, assignment, s);
    s.unload(vertices);
    return out;
}

namespace {

struct ClusterState {
    std::vector<uint32_t> vertices;
    std::vector<uint32_t> frontier;
    bool active = true;
    bool dirty = true;
};

}  // namespace

BitVector cluster_decode(const DecodingHypergraph &g, const BitVector &syndrome, const ClusterDecoderOptions &options) {
    if (syndrome.size() != g.num_vertices) {
        throw std::invalid_argument("cluster_decode: syndrome length does not match the hypergraph");
    }
    BitVector correction(g.num_edges());
    std::vector<uint8_t> excited(g.num_vertices, 0);
    std::vector<int32_t> owner(g.num_vertices, -1);
    std::vector<uint32_t> uf(g.num_vertices);
    std::vector<ClusterState> clusters(g.num_vertices);
    std::vector<uint32_t> active;
    for (size_t v : syndrome.support()) {
        excited[v] = 1;
        owner[v] = (int32_t)v;
        uf[v] = (uint32_t)v;
        clusters[v].vertices = {(uint32_t)v};
        clusters[v].frontier = {(uint32_t)v};
        active.push_back((uint32_t)v);
    }
    auto find = [&](uint32_t x) {
        while (uf[x] != x) {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        return x;
    };
    Scratch scratch(g.num_vertices);

    for (uint64_t step = 0; !active.empty(); step++) {
        size_t merges_this_step = 0;
        uint64_t radius = 1;
        if (options.schedule == GrowthSchedule::Exponential) {
            radius = uint64_t{1} << std::min<uint64_t>(2 * step, 40);
        }
        bool progressed = false;
        for (uint64_t layer = 0; layer < radius && !active.empty(); layer++) {
            std::vector<std::pair<uint32_t, uint32_t>> merges;
            bool grew = false;
            for (uint32_t r : active) {
                ClusterState &c = clusters[r];
                std::vector<uint32_t> next;
                for (uint32_t v : c.frontier) {
                    for (uint32_t e : g.vertex_edges[v]) {
                        for (uint32_t u : g.edge_vertices[e]) {
                            if (owner[u] < 0) {
                                owner[u] = (int32_t)r;
                                c.vertices.push_back(u);
                                next.push_back(u);
                                if (g.boundary_vertex[u]) {
                                    c.dirty = true;
                                }
                            } else {
                                uint32_t o = find((uint32_t)owner[u]);
                                if (o != r) {
                                    merges.push_back({std::min(o, r), std::max(o, r)});
                                }
                            }
                        }
                    }
                }
                std::sort(next.begin(), next.end());
                c.frontier = std::move(next);
                grew |= !c.frontier.empty();
            }
            std::sort(merges.begin(), merges.end());
            merges.erase(std::unique(merges.begin(), merges.end()), merges.end());
            for (auto [a, b] : merges) {
                uint32_t ra = find(a), rb = find(b);
                if (ra == rb) {
                    continue;
                }
                if (rb < ra) {
                    std::swap(ra, rb);
                }
                uf[rb] = ra;
                ClusterState &keep = clusters[ra];
                ClusterState &gone = clusters[rb];
                for (uint32_t v : gone.vertices) {
                    owner[v] = (int32_t)ra;
                }
                keep.vertices.insert(keep.vertices.end(), gone.vertices.begin(), gone.vertices.end());
                keep.frontier.insert(keep.frontier.end(), gone.frontier.begin(), gone.frontier.end());
                std::sort(keep.frontier.begin(), keep.frontier.end());
                keep.dirty = true;
                gone = ClusterState{};
                gone.active = false;
                merges_this_step++;
            }
            if (!merges.empty()) {
                std::vector<uint32_t> roots;
                for (uint32_t r : active) {
                    if (find(r) == r && clusters[r].active) {
                        roots.push_back(r);
                    }
                }
                active.swap(roots);
            }
            progressed |= grew || !merges.empty();
        }
        for (uint32_t r : active) {
            if (clusters[r].frontier.empty()) {
                clusters[r].dirty = true;
            }
        }
        // Correctability checks; neutral clusters are annihilated and freed.
        std::vector<uint32_t> still_active;
        for (uint32_t r : active) {
            ClusterState &c = clusters[r];
            if (options.lazy_recheck && !c.dirty) {
                still_active.push_back(r);
                continue;
            }
            c.dirty = false;
            scratch.load(c.vertices);
            ClusterAnalysis a = analyze_loaded(g, c.vertices, excited, scratch);
            if (a.assignment) {
                for (uint32_t e : extract_loaded(g, c.vertices, excited, *a.assignment, scratch)) {
                    correction.flip(e);
                }
                scratch.unload(c.vertices);
                for (uint32_t v : c.vertices) {
                    owner[v] = -1;
                }
                c = ClusterState{};
                c.active = false;
            } else {
                scratch.unload(c.vertices);
                still_active.push_back(r);
            }
        }
        active.swap(still_active);
        if (!progressed && !active.empty()) {
            // Every remaining cluster fills its connected component and was
            // just found uncorrectable.
            throw std::invalid_argument("cluster_decode: syndrome is not the syndrome of any error");
        }
        if (options.trace) {
            nlohmann::json line;
            line["step"] = step;
            line["clusters"] = active.size();
            std::vector<size_t> sizes;
            for (uint32_t r : active) {
                sizes.push_back(clusters[r].vertices.size());
            }
            line["sizes"] = sizes;
            line["merges"] = merges_this_step;
            *options.trace << line.dump() << "\n";
        }
    }
    return correction;
}

}  // namespace layercode
