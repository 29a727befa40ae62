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

#include "layercode/concat_decoder.h"

#include <optional>
#include <stdexcept>

#include "layercode/matching.h"

namespace layercode {

namespace {

class StagedDecoder {
   public:
    StagedDecoder(const LayerCode &code, const BitVector &syndrome, PauliType error_type)
        : L_(code),
          dual_(error_type == PauliType::X),
          incidence_(dual_ ? code.qubit_z_checks : code.qubit_x_checks),
          checks_(dual_ ? code.z_checks : code.x_checks),
          cur_(checks_.size(), 0),
          correction_(code.num_qubits()) {
        if (syndrome.size() != checks_.size()) {
            throw std::invalid_argument("concat_decode: syndrome length does not match the layer code");
        }
        for (size_t c : syndrome.support()) {
            cur_[c] = 1;
        }
    }

    void apply(int32_t q) {
        if (q < 0) {
            throw std::logic_error("concat_decode: path left the lattice");
        }
        correction_.flip((size_t)q);
        for (uint32_t c : incidence_[q]) {
            cur_[c] ^= 1;
        }
    }

    // Matching (or straight strings to `side`) inside every layer of a kind.
    void match_family(LayerKind kind, BoundarySet boundaries, std::optional<Side> side) {
        for (const Patch &p : L_.patches) {
            if (p.id.kind != kind) {
                continue;
            }
            GridView view(p, dual_);
            MatchingProblem problem;
            problem.nu = view.nu();
            problem.nv = view.nv();
            problem.boundaries = view.exits(boundaries);
            for (int u = 0; u < problem.nu; u++) {
                for (int v = 0; v < problem.nv; v++) {
                    if (cur_[view.site(u, v)]) {
                        problem.excitations.push_back({u, v});
                    }
                }
            }
            if (problem.excitations.empty()) {
                continue;
            }
            MatchingResult r;
            if (side) {
                if (!view.has_exit(*side)) {
                    throw std::logic_error("concat_decode: layer has no exit on the requested side");
                }
                r = match_to_side(problem, *side);
            } else {
                r = mwpm(problem);
            }
            for (const GridStep &s : r.steps) {
                apply(view.step_qubit(s));
            }
        }
    }

    bool family_clear(LayerKind kind) const {
        for (size_t c = 0; c < checks_.size(); c++) {
            if (cur_[c] && L_.patches[checks_[c].patch].id.kind == kind) {
                return false;
            }
        }
        return true;
    }

    // Excitation parity of each layer of `kind`, indexed by input check.
    BitVector layer_parities(LayerKind kind, size_t count) const {
        BitVector parity(count);
        for (size_t c = 0; c < checks_.size(); c++) {
            const LayerId &id = L_.patches[checks_[c].patch].id;
            if (cur_[c] && id.kind == kind) {
                parity.flip(id.index - 1);
            }
        }
        return parity;
    }

    bool any() const {
        for (uint8_t x : cur_) {
            if (x) {
                return true;
            }
        }
        return false;
    }

    const BitVector &correction() const {
        return correction_;
    }

   private:
    const LayerCode &L_;
    bool dual_;
    const std::vector<std::vector<uint32_t>> &incidence_;
    const std::vector<CheckInfo> &checks_;
    std::vector<uint8_t> cur_;
    BitVector correction_;
};

BitVector run(const LayerCode &code, const BitVector &syndrome, const InputDecoder &input_decoder,
              PauliType error_type, bool modified, StageReport *report) {
    const bool x_errors = error_type == PauliType::X;
    // Families in stage order: first, Q, last.
    const LayerKind first = x_errors ? LayerKind::X : LayerKind::Z;
    const LayerKind last = x_errors ? LayerKind::Z : LayerKind::X;
    const size_t last_count = x_errors ? code.input.num_z_checks() : code.input.num_x_checks();
    std::optional<Side> first_side, q_side;
    if (modified) {
        first_side = x_errors ? Side::HighU : Side::HighV;
        q_side = x_errors ? Side::HighU : Side::HighV;
    }

    StagedDecoder d(code, syndrome, error_type);
    StageReport local;

    d.match_family(first, BoundarySet::all(), first_side);
    local.first_family_clear = d.family_clear(first);
    if (!local.first_family_clear) {
        throw std::logic_error("concat_decode: excitations left on the first layer family after stage 1");
    }

    d.match_family(LayerKind::Q, x_errors ? BoundarySet::left_right() : BoundarySet::top_bottom(), q_side);
    local.second_family_clear = d.family_clear(LayerKind::Q) && d.family_clear(first);
    if (!local.second_family_clear) {
        throw std::logic_error("concat_decode: excitations left on Q-layers after stage 2");
    }

    BitVector sigma = d.layer_parities(last, last_count);
    local.input_syndrome_weight = sigma.weight();
    BitVector f = input_decoder.decode(sigma);
    if (f.size() != code.input.n()) {
        throw std::invalid_argument("concat_decode: input decoder does not match the input code");
    }
    for (size_t j : f.support()) {
        const Patch &qp = code.patch_of({LayerKind::Q, (uint32_t)j + 1});
        if (x_errors) {
            for (int iu = 0; iu < qp.nu; iu++) {
                d.apply(qp.v_edge(iu, 0));
            }
        } else {
            for (int ev = 0; ev < qp.nev; ev++) {
                d.apply(qp.v_edge(0, ev));
            }
        }
    }
    local.last_family_even = !d.layer_parities(last, last_count).any() && d.family_clear(LayerKind::Q) &&
                             d.family_clear(first);
    if (!local.last_family_even) {
        throw std::logic_error("concat_decode: odd excitation count left on a layer after stage 3");
    }

    d.match_family(last, BoundarySet::none(), std::nullopt);
    if (d.any()) {
        throw std::logic_error("concat_decode: excitations remain after the final stage");
    }
    if (report) {
        *report = local;
    }
    return d.correction();
}

}  // namespace

BitVector concat_decode(const LayerCode &code, const BitVector &syndrome, const InputDecoder &input_decoder,
                        PauliType error_type, StageReport *report) {
    return run(code, syndrome, input_decoder, error_type, false, report);
}

BitVector concat_decode_modified(const LayerCode &code, const BitVector &syndrome,
                                 const InputDecoder &input_decoder, PauliType error_type, StageReport *report) {
    return run(code, syndrome, input_decoder, error_type, true, report);
}

}  // namespace layercode
