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

#ifndef LAYERCODE_LAYER_CODE_H
#define LAYERCODE_LAYER_CODE_H

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "layercode/css_code.h"
#include "layercode/f2.h"

namespace layercode {

enum class LayerKind : uint8_t { Q = 0, X = 1, Z = 2 };

struct LayerId {
    LayerKind kind;
    /// 1-based position of the qubit or check in the input code.
    uint32_t index;

    auto operator<=>(const LayerId &) const = default;
    std::string name() const;
};

enum class Variant : uint8_t {
    /// X- and Z-layers span the full y-extent.
    Extended,
    /// X- and Z-layers stretch only over the Q-layers in their support.
    OriginalTermination,
};

std::string variant_name(Variant v);
Variant parse_variant(const std::string &s);

using Point = std::array<double, 3>;

/// One surface-code layer, stored as a grid in its own (u, v) plane.
///
/// Sides normal to an axis are either both smooth or both rough. On a
/// smooth axis the vertices sit on integer positions 0..L; on a rough axis
/// they sit on half-integers and the outermost edges dangle.
struct Patch {
    LayerId id;
    int axis_u, axis_v, axis_n;
    int normal;
    int u0, v0, lu, lv;
    bool rough_u, rough_v;
    int nu, nv;    // vertex grid
    int neu, nev;  // u-edges per row, v-edges per column; also the face grid
    std::vector<int32_t> vertex_check;
    std::vector<int32_t> u_edge_qubit;
    std::vector<int32_t> v_edge_qubit;
    std::vector<int32_t> face_check;

    int s_u() const {
        return rough_u ? 1 : 0;
    }
    int s_v() const {
        return rough_v ? 1 : 0;
    }
    int32_t vertex(int iu, int iv) const;
    int32_t u_edge(int eu, int iv) const;
    int32_t v_edge(int iu, int ev) const;
    int32_t face(int pu, int pv) const;
    Point point(double u, double v) const;
    Point vertex_point(int iu, int iv) const;
    Point u_edge_point(int eu, int iv) const;
    Point v_edge_point(int iu, int ev) const;
    Point face_point(int pu, int pv) const;
};

struct QubitInfo {
    Point pos;
    uint32_t patch;
    bool along_u;
    /// (eu, iv) for u-edges, (iu, ev) for v-edges.
    int a, b;
};

struct CheckInfo {
    Point pos;
    uint32_t patch;
    /// Vertex (iu, iv) for X-checks, face (pu, pv) for Z-checks.
    int a, b;
};

enum class DefectKind : uint8_t { QX, QZ, XZ };
std::string defect_kind_name(DefectKind k);

struct DefectLine {
    DefectKind kind;
    /// Layer in which e moves freely across the line.
    LayerId continuous_for_e;
    /// Layer that the line cuts for e (and which stays continuous for m).
    LayerId split_for_e;
    int axis;
    Point start, end;
    std::string fusion_rule;
};

enum class SideKind : uint8_t { Smooth, Rough, Defect };

/// Under original termination a region may bend across the junction where
/// an X- or Z-layer ends on a Q-layer; `patch` is the layer of its first
/// plaquette and the bounding box covers only the plaquettes in that layer.
struct Region {
    std::vector<uint32_t> z_checks;
    uint32_t patch;
    /// Face-grid bounding box [pu_min, pu_max] x [pv_min, pv_max].
    int pu_min, pu_max, pv_min, pv_max;
    /// Low-u, high-u, low-v, high-v side of the bounding box.
    std::array<SideKind, 4> sides;
    size_t smooth_boundary_qubits = 0;
};

struct LayerCode {
    CssCode input;
    int K = 1;
    Variant variant = Variant::OriginalTermination;
    Point box_min{}, box_max{};
    std::vector<Patch> patches;
    std::vector<int32_t> q_patch, x_patch, z_patch;  // indexed by 1-based layer index
    std::vector<QubitInfo> qubits;
    std::vector<CheckInfo> x_checks, z_checks;
    std::vector<std::vector<uint32_t>> checks_x, checks_z;
    std::vector<std::vector<uint32_t>> qubit_x_checks, qubit_z_checks;
    std::vector<DefectLine> defects;
    std::vector<Region> regions;
    std::vector<uint32_t> region_of_z_check;

    size_t num_qubits() const {
        return qubits.size();
    }
    Point lengths() const;
    /// X-check syndrome of a Z-type error.
    BitVector x_syndrome(const BitVector &z_error) const;
    /// Z-check syndrome of an X-type error.
    BitVector z_syndrome(const BitVector &x_error) const;
    BitMatrix hx_matrix() const;
    BitMatrix hz_matrix() const;
    size_t max_check_weight() const;
    bool checks_commute() const;
    /// N - rank(checks_x) - rank(checks_z), via sparse elimination.
    size_t k() const;
    const Patch &patch_of(LayerId id) const;
    bool has_patch(LayerId id) const;
};

LayerCode build(const CssCode &code, int K, Variant variant);

/// A local operator with its excitations, plus an equivalent operator
/// (their product is a stabilizer) realizing the same excitations.
struct FusionMove {
    PauliType pauli;
    std::string rule;
    std::vector<uint32_t> op;
    std::vector<uint32_t> excitations;
    std::vector<uint32_t> equivalent;
};

/// Moves available at the given qubit: a Z on it moves e, an X moves m.
std::vector<FusionMove> fusion_moves(const LayerCode &code, uint32_t qubit);
/// Qubit whose midpoint is at `pos` in `layer`; throws when off-lattice.
uint32_t qubit_at(const LayerCode &code, LayerId layer, const Point &pos);

BitVector quasiconcatenated_logical(const LayerCode &code, const BitVector &g);
/// X-type counterpart: horizontal strings on Q-layers merged inside Z-layers.
BitVector quasiconcatenated_x_logical(const LayerCode &code, const BitVector &h);

struct LogicalBasis {
    std::vector<BitVector> z;
    std::vector<BitVector> x;
};
LogicalBasis logical_basis(const LayerCode &code);

/// Matrices in text form plus a JSON geometry sidecar.
void export_layer_code(const LayerCode &code, const std::string &prefix);
LayerCode import_layer_code(const std::string &prefix);

}  // namespace layercode

#endif
