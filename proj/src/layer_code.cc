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

#include "layercode/layer_code.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace layercode {

std::string LayerId::name() const {
    const char *k = kind == LayerKind::Q ? "Q" : kind == LayerKind::X ? "X" : "Z";
    return k + std::to_string(index);
}

std::string variant_name(Variant v) {
    return v == Variant::Extended ? "extended" : "original";
}

Variant parse_variant(const std::string &s) {
    if (s == "extended") {
        return Variant::Extended;
    }
    if (s == "original" || s == "original-termination") {
        return Variant::OriginalTermination;
    }
    throw std::invalid_argument("unknown layer variant '" + s + "'");
}

std::string defect_kind_name(DefectKind k) {
    return k == DefectKind::QX ? "QX" : k == DefectKind::QZ ? "QZ" : "XZ";
}

int32_t Patch::vertex(int iu, int iv) const {
    if (iu < 0 || iv < 0 || iu >= nu || iv >= nv) {
        return -1;
    }
    return vertex_check[iu * nv + iv];
}

int32_t Patch::u_edge(int eu, int iv) const {
    if (eu < 0 || iv < 0 || eu >= neu || iv >= nv) {
        return -1;
    }
    return u_edge_qubit[eu * nv + iv];
}

int32_t Patch::v_edge(int iu, int ev) const {
    if (iu < 0 || ev < 0 || iu >= nu || ev >= nev) {
        return -1;
    }
    return v_edge_qubit[iu * nev + ev];
}

int32_t Patch::face(int pu, int pv) const {
    if (pu < 0 || pv < 0 || pu >= neu || pv >= nev) {
        return -1;
    }
    return face_check[pu * nev + pv];
}

Point Patch::point(double u, double v) const {
    Point p{};
    p[axis_u] = u0 + u;
    p[axis_v] = v0 + v;
    p[axis_n] = normal;
    return p;
}

Point Patch::vertex_point(int iu, int iv) const {
    return point(iu + 0.5 * s_u(), iv + 0.5 * s_v());
}

Point Patch::u_edge_point(int eu, int iv) const {
    return point(eu + 0.5 * (1 - s_u()), iv + 0.5 * s_v());
}

Point Patch::v_edge_point(int iu, int ev) const {
    return point(iu + 0.5 * s_u(), ev + 0.5 * (1 - s_v()));
}

Point Patch::face_point(int pu, int pv) const {
    return point(pu + 0.5 * (1 - s_u()), pv + 0.5 * (1 - s_v()));
}

namespace {

Patch make_patch(LayerId id, int axis_u, int axis_v, int axis_n, int normal, int u0, int lu, bool rough_u, int v0,
                 int lv, bool rough_v) {
    Patch p;
    p.id = id;
    p.axis_u = axis_u;
    p.axis_v = axis_v;
    p.axis_n = axis_n;
    p.normal = normal;
    p.u0 = u0;
    p.v0 = v0;
    p.lu = lu;
    p.lv = lv;
    p.rough_u = rough_u;
    p.rough_v = rough_v;
    p.nu = rough_u ? lu : lu + 1;
    p.neu = rough_u ? lu + 1 : lu;
    p.nv = rough_v ? lv : lv + 1;
    p.nev = rough_v ? lv + 1 : lv;
    p.vertex_check.assign((size_t)p.nu * p.nv, -1);
    p.u_edge_qubit.assign((size_t)p.neu * p.nv, -1);
    p.v_edge_qubit.assign((size_t)p.nu * p.nev, -1);
    p.face_check.assign((size_t)p.neu * p.nev, -1);
    return p;
}

struct Span {
    bool present;
    int lo, hi;
};

// y-extent of the X- or Z-layer for one check row.
Span layer_span(const BitMatrix &h, size_t row, int K, int n, Variant variant) {
    if (variant == Variant::Extended) {
        return {true, 0, (n + 1) * K};
    }
    std::vector<size_t> supp = h.row(row).support();
    if (supp.empty()) {
        return {false, 0, 0};
    }
    int first = (int)supp.front() + 1;
    int last = (int)supp.back() + 1;
    if (first == last) {
        return {true, first * K, (first + 1) * K};
    }
    return {true, first * K, last * K};
}

struct Entry {
    Point pos;
    uint32_t patch;
    bool along_u;
    int a, b;
};

// Patches are created in (kind, index) order, so sorting by (patch, point)
// realizes the (kind, index, coordinate) ordering.
void sort_entries(std::vector<Entry> &entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry &x, const Entry &y) {
        return std::tie(x.patch, x.pos) < std::tie(y.patch, y.pos);
    });
}

void toggle(std::vector<uint32_t> &sorted_set, uint32_t q) {
    auto it = std::lower_bound(sorted_set.begin(), sorted_set.end(), q);
    if (it != sorted_set.end() && *it == q) {
        sorted_set.erase(it);
    } else {
        sorted_set.insert(it, q);
    }
}

std::vector<std::vector<uint32_t>> transpose(const std::vector<std::vector<uint32_t>> &rows, size_t cols) {
    std::vector<std::vector<uint32_t>> t(cols);
    for (uint32_t r = 0; r < rows.size(); r++) {
        for (uint32_t c : rows[r]) {
            t[c].push_back(r);
        }
    }
    return t;
}

std::vector<std::pair<int, int>> consecutive_pairs(const std::vector<int> &common) {
    if (common.size() % 2) {
        throw std::logic_error("odd common support between an X and a Z check");
    }
    std::vector<std::pair<int, int>> pairs;
    for (size_t t = 0; t + 1 < common.size(); t += 2) {
        pairs.push_back({common[t], common[t + 1]});
    }
    return pairs;
}

std::vector<int> common_support(const BitMatrix &a, size_t ra, const BitMatrix &b, size_t rb) {
    std::vector<int> out;
    for (size_t j = 0; j < a.cols(); j++) {
        if (a.get(ra, j) && b.get(rb, j)) {
            out.push_back((int)j + 1);
        }
    }
    return out;
}

}  // namespace

Point LayerCode::lengths() const {
    return {box_max[0] - box_min[0], box_max[1] - box_min[1], box_max[2] - box_min[2]};
}

BitVector LayerCode::x_syndrome(const BitVector &z_error) const {
    BitVector s(x_checks.size());
    for (size_t q : z_error.support()) {
        for (uint32_t c : qubit_x_checks[q]) {
            s.flip(c);
        }
    }
    return s;
}

BitVector LayerCode::z_syndrome(const BitVector &x_error) const {
    BitVector s(z_checks.size());
    for (size_t q : x_error.support()) {
        for (uint32_t c : qubit_z_checks[q]) {
            s.flip(c);
        }
    }
    return s;
}

BitMatrix LayerCode::hx_matrix() const {
    BitMatrix m(checks_x.size(), qubits.size());
    for (size_t r = 0; r < checks_x.size(); r++) {
        for (uint32_t q : checks_x[r]) {
            m.flip(r, q);
        }
    }
    return m;
}

BitMatrix LayerCode::hz_matrix() const {
    BitMatrix m(checks_z.size(), qubits.size());
    for (size_t r = 0; r < checks_z.size(); r++) {
        for (uint32_t q : checks_z[r]) {
            m.flip(r, q);
        }
    }
    return m;
}

size_t LayerCode::max_check_weight() const {
    size_t w = 0;
    for (const auto *rows : {&checks_x, &checks_z}) {
        for (const auto &r : *rows) {
            w = std::max(w, r.size());
        }
    }
    return w;
}

bool LayerCode::checks_commute() const {
    std::vector<uint8_t> parity(x_checks.size(), 0);
    std::vector<uint32_t> touched;
    for (const auto &row : checks_z) {
        touched.clear();
        for (uint32_t q : row) {
            for (uint32_t c : qubit_x_checks[q]) {
                parity[c] ^= 1;
                touched.push_back(c);
            }
        }
        bool ok = true;
        for (uint32_t c : touched) {
            ok &= parity[c] == 0;
            parity[c] = 0;
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

size_t LayerCode::k() const {
    size_t rx = sparse_rank(qubits.size(), checks_x);
    size_t rz = sparse_rank(qubits.size(), checks_z);
    return qubits.size() - rx - rz;
}

const Patch &LayerCode::patch_of(LayerId id) const {
    if (!has_patch(id)) {
        throw std::out_of_range("no layer " + id.name());
    }
    const auto &table = id.kind == LayerKind::Q ? q_patch : id.kind == LayerKind::X ? x_patch : z_patch;
    return patches[table[id.index]];
}

bool LayerCode::has_patch(LayerId id) const {
    const auto &table = id.kind == LayerKind::Q ? q_patch : id.kind == LayerKind::X ? x_patch : z_patch;
    return id.index >= 1 && id.index < table.size() && table[id.index] >= 0;
}

LayerCode build(const CssCode &code, int K, Variant variant) {
    ValidationReport report = validate(code, {.check_rates = false});
    if (!report.ok()) {
        throw std::invalid_argument("build: invalid input code: " + report.violations.front().message);
    }
    if (K < 1) {
        throw std::invalid_argument("build: K must be at least 1");
    }
    const int n = (int)code.n();
    const int nx = (int)code.num_x_checks();
    const int nz = (int)code.num_z_checks();
    const int Lx = (nz + 1) * K;
    const int Lz = (nx + 1) * K;

    LayerCode L;
    L.input = code;
    L.K = K;
    L.variant = variant;
    L.q_patch.assign(n + 1, -1);
    L.x_patch.assign(nx + 1, -1);
    L.z_patch.assign(nz + 1, -1);

    // Q-layer j: xz-plane at y = jK; smooth at x = 0, Lx; rough at z = 0, Lz.
    for (int j = 1; j <= n; j++) {
        L.q_patch[j] = (int32_t)L.patches.size();
        L.patches.push_back(make_patch({LayerKind::Q, (uint32_t)j}, 0, 2, 1, j * K, 0, Lx, false, 0, Lz, true));
    }
    // X-layer i: xy-plane at z = iK, all smooth.
    for (int i = 1; i <= nx; i++) {
        Span s = layer_span(code.hx, i - 1, K, n, variant);
        if (!s.present) {
            continue;
        }
        L.x_patch[i] = (int32_t)L.patches.size();
        L.patches.push_back(
            make_patch({LayerKind::X, (uint32_t)i}, 0, 1, 2, i * K, 0, Lx, false, s.lo, s.hi - s.lo, false));
    }
    // Z-layer i: yz-plane at x = iK, all rough.
    for (int i = 1; i <= nz; i++) {
        Span s = layer_span(code.hz, i - 1, K, n, variant);
        if (!s.present) {
            continue;
        }
        L.z_patch[i] = (int32_t)L.patches.size();
        L.patches.push_back(
            make_patch({LayerKind::Z, (uint32_t)i}, 1, 2, 0, i * K, s.lo, s.hi - s.lo, true, 0, Lz, true));
    }

    L.box_min = {1e300, 1e300, 1e300};
    L.box_max = {-1e300, -1e300, -1e300};
    for (const Patch &p : L.patches) {
        for (const Point &c : {p.point(0, 0), p.point(p.lu, p.lv)}) {
            for (int a = 0; a < 3; a++) {
                L.box_min[a] = std::min(L.box_min[a], c[a]);
                L.box_max[a] = std::max(L.box_max[a], c[a]);
            }
        }
    }

    // Qubits, X-checks and Z-checks, ordered by (layer, coordinate).
    std::vector<Entry> edges, vertices, faces;
    for (uint32_t pi = 0; pi < L.patches.size(); pi++) {
        const Patch &p = L.patches[pi];
        for (int eu = 0; eu < p.neu; eu++) {
            for (int iv = 0; iv < p.nv; iv++) {
                edges.push_back({p.u_edge_point(eu, iv), pi, true, eu, iv});
            }
        }
        for (int iu = 0; iu < p.nu; iu++) {
            for (int ev = 0; ev < p.nev; ev++) {
                edges.push_back({p.v_edge_point(iu, ev), pi, false, iu, ev});
            }
        }
        for (int iu = 0; iu < p.nu; iu++) {
            for (int iv = 0; iv < p.nv; iv++) {
                vertices.push_back({p.vertex_point(iu, iv), pi, false, iu, iv});
            }
        }
        for (int pu = 0; pu < p.neu; pu++) {
            for (int pv = 0; pv < p.nev; pv++) {
                faces.push_back({p.face_point(pu, pv), pi, false, pu, pv});
            }
        }
    }
    sort_entries(edges);
    sort_entries(vertices);
    sort_entries(faces);
    for (uint32_t q = 0; q < edges.size(); q++) {
        const Entry &e = edges[q];
        Patch &p = L.patches[e.patch];
        if (e.along_u) {
            p.u_edge_qubit[e.a * p.nv + e.b] = (int32_t)q;
        } else {
            p.v_edge_qubit[e.a * p.nev + e.b] = (int32_t)q;
        }
        L.qubits.push_back({e.pos, e.patch, e.along_u, e.a, e.b});
    }
    for (uint32_t c = 0; c < vertices.size(); c++) {
        const Entry &e = vertices[c];
        Patch &p = L.patches[e.patch];
        p.vertex_check[e.a * p.nv + e.b] = (int32_t)c;
        L.x_checks.push_back({e.pos, e.patch, e.a, e.b});
    }
    for (uint32_t c = 0; c < faces.size(); c++) {
        const Entry &e = faces[c];
        Patch &p = L.patches[e.patch];
        p.face_check[e.a * p.nev + e.b] = (int32_t)c;
        L.z_checks.push_back({e.pos, e.patch, e.a, e.b});
    }

    // Plain surface-code stars and plaquettes.
    L.checks_x.resize(L.x_checks.size());
    for (uint32_t c = 0; c < L.x_checks.size(); c++) {
        const Patch &p = L.patches[L.x_checks[c].patch];
        int iu = L.x_checks[c].a, iv = L.x_checks[c].b;
        for (int32_t q : {p.u_edge(iu + p.s_u(), iv), p.u_edge(iu + p.s_u() - 1, iv), p.v_edge(iu, iv + p.s_v()),
                          p.v_edge(iu, iv + p.s_v() - 1)}) {
            if (q >= 0) {
                L.checks_x[c].push_back((uint32_t)q);
            }
        }
    }
    L.checks_z.resize(L.z_checks.size());
    for (uint32_t c = 0; c < L.z_checks.size(); c++) {
        const Patch &p = L.patches[L.z_checks[c].patch];
        int pu = L.z_checks[c].a, pv = L.z_checks[c].b;
        for (int32_t q : {p.u_edge(pu, pv - p.s_v()), p.u_edge(pu, pv - p.s_v() + 1), p.v_edge(pu - p.s_u(), pv),
                          p.v_edge(pu - p.s_u() + 1, pv)}) {
            if (q >= 0) {
                L.checks_z[c].push_back((uint32_t)q);
            }
        }
    }

    // Junctions: edges of the split layer that cross the line also act on
    // the vertex of the continuous layer lying on the line.
    auto attach = [&](int32_t q, int32_t w) {
        if (q < 0 || w < 0) {
            throw std::logic_error("junction attachment off the lattice");
        }
        L.checks_x[w].push_back((uint32_t)q);
    };
    auto fmt_rule = [](LayerId a, LayerId b) {
        return "e_" + a.name() + " = e_" + b.name() + "- x e_" + b.name() + "+; m_" + b.name() + " = m_" + a.name() +
               "- x m_" + a.name() + "+";
    };
    for (int i = 1; i <= nz; i++) {
        if (L.z_patch[i] < 0) {
            continue;
        }
        const Patch &zp = L.patches[L.z_patch[i]];
        for (int j = 1; j <= n; j++) {
            if (!code.hz.get(i - 1, j - 1)) {
                continue;
            }
            const Patch &qp = L.patches[L.q_patch[j]];
            for (int iv = 0; iv < zp.nv; iv++) {
                attach(zp.u_edge(j * K - zp.u0, iv), qp.vertex(i * K, iv));
            }
            L.defects.push_back({DefectKind::QZ, qp.id, zp.id, 2, Point{(double)i * K, (double)j * K, 0.0},
                                 Point{(double)i * K, (double)j * K, (double)Lz}, fmt_rule(qp.id, zp.id)});
        }
    }
    for (int i = 1; i <= nx; i++) {
        if (L.x_patch[i] < 0) {
            continue;
        }
        const Patch &xp = L.patches[L.x_patch[i]];
        for (int j = 1; j <= n; j++) {
            if (!code.hx.get(i - 1, j - 1)) {
                continue;
            }
            const Patch &qp = L.patches[L.q_patch[j]];
            for (int iu = 0; iu < qp.nu; iu++) {
                attach(qp.v_edge(iu, i * K), xp.vertex(iu, j * K - xp.v0));
            }
            L.defects.push_back({DefectKind::QX, xp.id, qp.id, 0, Point{0.0, (double)j * K, (double)i * K},
                                 Point{(double)Lx, (double)j * K, (double)i * K}, fmt_rule(xp.id, qp.id)});
        }
        for (int i2 = 1; i2 <= nz; i2++) {
            if (L.z_patch[i2] < 0) {
                continue;
            }
            const Patch &zp = L.patches[L.z_patch[i2]];
            for (auto [p1, p2] : consecutive_pairs(common_support(code.hx, i - 1, code.hz, i2 - 1))) {
                for (int m = p1 * K; m < p2 * K; m++) {
                    attach(zp.v_edge(m - zp.u0, i * K), xp.vertex(i2 * K, m - xp.v0));
                }
                L.defects.push_back({DefectKind::XZ, xp.id, zp.id, 1,
                                     Point{(double)i2 * K, (double)p1 * K, (double)i * K},
                                     Point{(double)i2 * K, (double)p2 * K, (double)i * K}, fmt_rule(xp.id, zp.id)});
            }
        }
    }
    for (auto &row : L.checks_x) {
        std::sort(row.begin(), row.end());
    }
    L.qubit_x_checks = transpose(L.checks_x, L.qubits.size());

    // Each plaquette next to a junction is merged with the continuous
    // layer's edges it needs to commute with every star.
    auto connecting_edge = [&](uint32_t w1, uint32_t w2) -> int32_t {
        const CheckInfo &a = L.x_checks[w1];
        const CheckInfo &b = L.x_checks[w2];
        const Patch &p = L.patches[a.patch];
        if (a.b == b.b && std::abs(a.a - b.a) == 1) {
            return p.u_edge(std::min(a.a, b.a) + p.s_u(), a.b);
        }
        if (a.a == b.a && std::abs(a.b - b.b) == 1) {
            return p.v_edge(a.a, std::min(a.b, b.b) + p.s_v());
        }
        return -1;
    };
    auto boundary_edge = [&](uint32_t w) -> int32_t {
        const CheckInfo &a = L.x_checks[w];
        const Patch &p = L.patches[a.patch];
        if (p.rough_v && a.b == 0) {
            return p.v_edge(a.a, 0);
        }
        if (p.rough_v && a.b == p.nv - 1) {
            return p.v_edge(a.a, p.nev - 1);
        }
        if (p.rough_u && a.a == 0) {
            return p.u_edge(0, a.b);
        }
        if (p.rough_u && a.a == p.nu - 1) {
            return p.u_edge(p.neu - 1, a.b);
        }
        return -1;
    };
    std::vector<uint8_t> parity(L.x_checks.size(), 0);
    for (uint32_t f = 0; f < L.checks_z.size(); f++) {
        auto &row = L.checks_z[f];
        std::sort(row.begin(), row.end());
        bool resolved = false;
        for (int iter = 0; iter < 8 && !resolved; iter++) {
            std::vector<uint32_t> touched;
            for (uint32_t q : row) {
                for (uint32_t c : L.qubit_x_checks[q]) {
                    parity[c] ^= 1;
                    touched.push_back(c);
                }
            }
            std::map<uint32_t, std::vector<uint32_t>> odd_by_patch;
            for (uint32_t c : touched) {
                if (parity[c]) {
                    odd_by_patch[L.x_checks[c].patch].push_back(c);
                    parity[c] = 0;
                }
            }
            for (uint32_t c : touched) {
                parity[c] = 0;
            }
            if (odd_by_patch.empty()) {
                resolved = true;
                break;
            }
            std::vector<int32_t> fixes;
            for (auto &[pi, ws] : odd_by_patch) {
                if (ws.size() > 2) {
                    throw std::logic_error("junction plaquette touches too many stars in one layer");
                }
                if (ws.size() == 2) {
                    fixes.push_back(connecting_edge(ws[0], ws[1]));
                }
            }
            if (fixes.empty()) {
                for (auto &[pi, ws] : odd_by_patch) {
                    fixes.push_back(boundary_edge(ws[0]));
                }
            }
            for (int32_t q : fixes) {
                if (q < 0) {
                    throw std::logic_error("junction plaquette cannot be closed locally");
                }
                toggle(row, (uint32_t)q);
            }
        }
        if (!resolved) {
            throw std::logic_error("junction plaquette did not converge");
        }
    }
    L.qubit_z_checks = transpose(L.checks_z, L.qubits.size());

    if (L.max_check_weight() > 6) {
        throw std::logic_error("build produced a check of weight above 6");
    }
    if (!L.checks_commute()) {
        throw std::logic_error("build produced anticommuting checks");
    }

    // Regions: plaquettes joined by qubits shared by exactly two of them.
    std::vector<uint32_t> parent(L.z_checks.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &zs : L.qubit_z_checks) {
        if (zs.size() == 2) {
            uint32_t a = find(zs[0]), b = find(zs[1]);
            if (a != b) {
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::map<uint32_t, uint32_t> region_index;
    L.region_of_z_check.resize(L.z_checks.size());
    for (uint32_t f = 0; f < L.z_checks.size(); f++) {
        uint32_t root = find(f);
        auto [it, fresh] = region_index.emplace(root, (uint32_t)L.regions.size());
        if (fresh) {
            Region r;
            r.patch = L.z_checks[f].patch;
            r.pu_min = r.pv_min = INT32_MAX;
            r.pu_max = r.pv_max = INT32_MIN;
            L.regions.push_back(r);
        }
        Region &r = L.regions[it->second];
        r.z_checks.push_back(f);
        L.region_of_z_check[f] = it->second;
        if (r.patch != L.z_checks[f].patch) {
            continue;
        }
        r.pu_min = std::min(r.pu_min, L.z_checks[f].a);
        r.pu_max = std::max(r.pu_max, L.z_checks[f].a);
        r.pv_min = std::min(r.pv_min, L.z_checks[f].b);
        r.pv_max = std::max(r.pv_max, L.z_checks[f].b);
    }
    for (Region &r : L.regions) {
        const Patch &p = L.patches[r.patch];
        SideKind su = p.rough_u ? SideKind::Rough : SideKind::Smooth;
        SideKind sv = p.rough_v ? SideKind::Rough : SideKind::Smooth;
        r.sides = {r.pu_min == 0 ? su : SideKind::Defect, r.pu_max == p.neu - 1 ? su : SideKind::Defect,
                   r.pv_min == 0 ? sv : SideKind::Defect, r.pv_max == p.nev - 1 ? sv : SideKind::Defect};
    }
    for (const auto &zs : L.qubit_z_checks) {
        if (zs.size() == 1) {
            L.regions[L.region_of_z_check[zs[0]]].smooth_boundary_qubits++;
        }
    }
    return L;
}

uint32_t qubit_at(const LayerCode &code, LayerId layer, const Point &pos) {
    if (code.has_patch(layer)) {
        uint32_t pi = (uint32_t)(&code.patch_of(layer) - code.patches.data());
        for (uint32_t q = 0; q < code.qubits.size(); q++) {
            const QubitInfo &info = code.qubits[q];
            if (info.patch == pi && std::abs(info.pos[0] - pos[0]) < 1e-9 && std::abs(info.pos[1] - pos[1]) < 1e-9 &&
                std::abs(info.pos[2] - pos[2]) < 1e-9) {
                return q;
            }
        }
    }
    throw std::out_of_range("no qubit of " + layer.name() + " at the requested location");
}

std::vector<FusionMove> fusion_moves(const LayerCode &code, uint32_t qubit) {
    if (qubit >= code.qubits.size()) {
        throw std::out_of_range("fusion_moves: location off the lattice");
    }
    auto describe = [&](char anyon, const std::vector<uint32_t> &checks, const std::vector<CheckInfo> &info,
                        const char *condense_side) {
        std::string a(1, anyon);
        if (checks.size() == 1) {
            return a + " condenses at the " + condense_side + " boundary of " +
                   code.patches[info[checks[0]].patch].id.name();
        }
        std::map<uint32_t, int> per_patch;
        for (uint32_t c : checks) {
            per_patch[info[c].patch]++;
        }
        if (per_patch.size() == 1) {
            return a + " x " + a + " = 1";
        }
        std::string lone, split;
        for (auto [pi, cnt] : per_patch) {
            (cnt == 1 ? lone : split) = code.patches[pi].id.name();
        }
        return a + "_" + lone + " = " + a + "_" + split + "- x " + a + "_" + split + "+";
    };
    std::vector<FusionMove> moves;
    {
        FusionMove m;
        m.pauli = PauliType::Z;
        m.op = {qubit};
        m.excitations = code.qubit_x_checks[qubit];
        m.rule = describe('e', m.excitations, code.x_checks, "rough");
        if (!code.qubit_z_checks[qubit].empty()) {
            m.equivalent = code.checks_z[code.qubit_z_checks[qubit][0]];
            toggle(m.equivalent, qubit);
        }
        moves.push_back(std::move(m));
    }
    {
        FusionMove m;
        m.pauli = PauliType::X;
        m.op = {qubit};
        m.excitations = code.qubit_z_checks[qubit];
        m.rule = describe('m', m.excitations, code.z_checks, "smooth");
        if (!code.qubit_x_checks[qubit].empty()) {
            m.equivalent = code.checks_x[code.qubit_x_checks[qubit][0]];
            toggle(m.equivalent, qubit);
        }
        moves.push_back(std::move(m));
    }
    return moves;
}

BitVector quasiconcatenated_logical(const LayerCode &code, const BitVector &g) {
    const CssCode &in = code.input;
    if (g.size() != in.n() || in.hx.multiply(g).any() || in_rowspace(in.hz, g)) {
        throw std::invalid_argument("quasiconcatenated_logical: g must be a nontrivial Z logical of the input");
    }
    BitVector op(code.num_qubits());
    // Full-height vertical strings on column x = 0 of each Q-layer in supp(g).
    for (size_t j : g.support()) {
        const Patch &qp = code.patch_of({LayerKind::Q, (uint32_t)j + 1});
        for (int ev = 0; ev < qp.nev; ev++) {
            op.flip(qp.v_edge(0, ev));
        }
    }
    // Pair up the string ends inside each X-layer along x = 0.
    for (size_t i = 0; i < in.num_x_checks(); i++) {
        std::vector<int> common;
        for (size_t j : g.support()) {
            if (in.hx.get(i, j)) {
                common.push_back((int)j + 1);
            }
        }
        if (common.empty()) {
            continue;
        }
        const Patch &xp = code.patch_of({LayerKind::X, (uint32_t)i + 1});
        for (auto [p1, p2] : consecutive_pairs(common)) {
            for (int m = p1 * code.K; m < p2 * code.K; m++) {
                op.flip(xp.v_edge(0, m - xp.v0));
            }
        }
    }
    if (code.x_syndrome(op).any()) {
        throw std::logic_error("quasiconcatenated_logical: construction left a nonzero syndrome");
    }
    return op;
}

BitVector quasiconcatenated_x_logical(const LayerCode &code, const BitVector &h) {
    const CssCode &in = code.input;
    if (h.size() != in.n() || in.hz.multiply(h).any() || in_rowspace(in.hx, h)) {
        throw std::invalid_argument("quasiconcatenated_x_logical: h must be a nontrivial X logical of the input");
    }
    BitVector op(code.num_qubits());
    // Full-width strings crossing the bottom row of each Q-layer in supp(h).
    for (size_t j : h.support()) {
        const Patch &qp = code.patch_of({LayerKind::Q, (uint32_t)j + 1});
        for (int iu = 0; iu < qp.nu; iu++) {
            op.flip(qp.v_edge(iu, 0));
        }
    }
    for (size_t i = 0; i < in.num_z_checks(); i++) {
        std::vector<int> common;
        for (size_t j : h.support()) {
            if (in.hz.get(i, j)) {
                common.push_back((int)j + 1);
            }
        }
        if (common.empty()) {
            continue;
        }
        const Patch &zp = code.patch_of({LayerKind::Z, (uint32_t)i + 1});
        for (auto [p1, p2] : consecutive_pairs(common)) {
            for (int m = p1 * code.K; m < p2 * code.K; m++) {
                op.flip(zp.v_edge(m - zp.u0, 0));
            }
        }
    }
    if (code.z_syndrome(op).any()) {
        throw std::logic_error("quasiconcatenated_x_logical: construction left a nonzero syndrome");
    }
    return op;
}

LogicalBasis logical_basis(const LayerCode &code) {
    SymplecticBasis pairs = logical_pairs(code.input);
    LogicalBasis basis;
    for (const BitVector &g : pairs.z) {
        basis.z.push_back(quasiconcatenated_logical(code, g));
    }
    for (const BitVector &h : pairs.x) {
        basis.x.push_back(quasiconcatenated_x_logical(code, h));
    }
    for (size_t a = 0; a < basis.z.size(); a++) {
        for (size_t b = 0; b < basis.x.size(); b++) {
            if (basis.z[a].dot(basis.x[b]) != (a == b)) {
                throw std::logic_error("logical_basis: pairing is not symplectic");
            }
        }
    }
    return basis;
}

namespace {

nlohmann::json geometry_json(const LayerCode &code) {
    nlohmann::json j;
    std::vector<std::string> hx, hz;
    for (size_t r = 0; r < code.input.hx.rows(); r++) {
        hx.push_back(code.input.hx.row(r).to_string());
    }
    for (size_t r = 0; r < code.input.hz.rows(); r++) {
        hz.push_back(code.input.hz.row(r).to_string());
    }
    j["input"] = {{"n", code.input.n()}, {"hx", hx}, {"hz", hz}};
    j["K"] = code.K;
    j["variant"] = variant_name(code.variant);
    j["lengths"] = code.lengths();
    j["box_min"] = code.box_min;
    nlohmann::json qubits = nlohmann::json::array();
    for (const QubitInfo &q : code.qubits) {
        qubits.push_back({q.pos[0], q.pos[1], q.pos[2], code.patches[q.patch].id.name()});
    }
    j["qubits"] = qubits;
    nlohmann::json defects = nlohmann::json::array();
    for (const DefectLine &d : code.defects) {
        defects.push_back({{"kind", defect_kind_name(d.kind)},
                           {"continuous_for_e", d.continuous_for_e.name()},
                           {"split_for_e", d.split_for_e.name()},
                           {"axis", d.axis},
                           {"start", d.start},
                           {"end", d.end},
                           {"fusion_rule", d.fusion_rule}});
    }
    j["defects"] = defects;
    nlohmann::json regions = nlohmann::json::array();
    for (const Region &r : code.regions) {
        regions.push_back({{"layer", code.patches[r.patch].id.name()}, {"z_checks", r.z_checks}});
    }
    j["regions"] = regions;
    return j;
}

}  // namespace

void export_layer_code(const LayerCode &code, const std::string &prefix) {
    std::ofstream hx(prefix + "_hx.txt"), hz(prefix + "_hz.txt"), geo(prefix + ".json");
    if (!hx || !hz || !geo) {
        throw std::runtime_error("export_layer_code: cannot open output files for prefix " + prefix);
    }
    code.hx_matrix().write_text(hx);
    code.hz_matrix().write_text(hz);
    geo << geometry_json(code).dump(1) << "\n";
}

LayerCode import_layer_code(const std::string &prefix) {
    std::ifstream hx_in(prefix + "_hx.txt"), hz_in(prefix + "_hz.txt"), geo_in(prefix + ".json");
    if (!hx_in || !hz_in || !geo_in) {
        throw std::runtime_error("import_layer_code: missing files for prefix " + prefix);
    }
    BitMatrix hx = BitMatrix::read_text(hx_in);
    BitMatrix hz = BitMatrix::read_text(hz_in);
    nlohmann::json j = nlohmann::json::parse(geo_in);
    CssCode input(BitMatrix::from_strings(j["input"]["hx"].get<std::vector<std::string>>()),
                  BitMatrix::from_strings(j["input"]["hz"].get<std::vector<std::string>>()));
    if (input.hx.rows() == 0 || input.hz.rows() == 0) {
        size_t n = j["input"]["n"].get<size_t>();
        input = CssCode(input.hx.rows() ? input.hx : BitMatrix(0, n), input.hz.rows() ? input.hz : BitMatrix(0, n));
    }
    LayerCode code = build(input, j["K"].get<int>(), parse_variant(j["variant"].get<std::string>()));
    if (code.hx_matrix() != hx || code.hz_matrix() != hz || geometry_json(code) != j) {
        throw std::runtime_error("import_layer_code: files do not match the rebuilt layer code");
    }
    return code;
}

}  // namespace layercode
