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

#ifndef LAYERCODE_MATCHING_H
#define LAYERCODE_MATCHING_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "layercode/layer_code.h"

namespace layercode {

enum class Side : uint8_t { LowU = 0, HighU = 1, LowV = 2, HighV = 3 };

struct BoundarySet {
    std::array<bool, 4> open{};  // indexed by Side

    bool allows(Side s) const {
        return open[(int)s];
    }
    bool any() const {
        return open[0] || open[1] || open[2] || open[3];
    }
    static BoundarySet all() {
        return {{true, true, true, true}};
    }
    static BoundarySet none() {
        return {};
    }
    static BoundarySet top_bottom() {
        return {{false, false, true, true}};
    }
    static BoundarySet top_only() {
        return {{false, false, false, true}};
    }
    static BoundarySet left_right() {
        return {{true, true, false, false}};
    }
    static BoundarySet right_only() {
        return {{false, true, false, false}};
    }
};

struct GridPoint {
    int u, v;
    bool operator==(const GridPoint &) const = default;
};

/// One unit step from site (u, v) to (u + 1, v) or (u, v + 1). u or v may be
/// -1 or the grid size minus one when the step leaves through a boundary.
struct GridStep {
    bool along_u;
    int u, v;
};

struct MatchingProblem {
    int nu = 0, nv = 0;
    std::vector<GridPoint> excitations;
    BoundarySet boundaries;
};

struct MatchingResult {
    /// Partner index per excitation, or -1 when matched to a boundary.
    std::vector<int> partner;
    std::vector<Side> boundary_side;  // meaningful where partner == -1
    int64_t total_weight = 0;
    std::vector<GridStep> steps;
};

class OddParityNoBoundary : public std::invalid_argument {
   public:
    OddParityNoBoundary() : std::invalid_argument("odd number of excitations and no open boundary") {
    }
};

/// Distance and side of the nearest open boundary; ties go to low u, then
/// low v, then high u, then high v. Distance is -1 when none is open.
std::pair<int, Side> nearest_boundary(const MatchingProblem &problem, GridPoint p);

/// Auto uses the subset DP up to 16 excitations and blossom above.
enum class MatchingAlgorithm : uint8_t { Auto, SubsetDp, Blossom };

/// Exact minimum-weight perfect matching under the L1 metric, with one
/// boundary mirror per excitation. Paths run along v first, then along u.
MatchingResult mwpm(const MatchingProblem &problem, MatchingAlgorithm algorithm = MatchingAlgorithm::Auto);

/// Like mwpm but every excitation goes straight to the given side.
MatchingResult match_to_side(const MatchingProblem &problem, Side side);

/// A surface-code patch seen as a grid of excitation sites: vertices for
/// e-type (X-check) excitations, faces for m-type (Z-check) ones.
class GridView {
   public:
    GridView(const Patch &patch, bool dual);

    int nu() const {
        return dual_ ? p_->neu : p_->nu;
    }
    int nv() const {
        return dual_ ? p_->nev : p_->nv;
    }
    /// Check index at a site.
    int32_t site(int u, int v) const;
    /// Qubit crossed by a step, or -1 if the step leaves the lattice.
    int32_t step_qubit(const GridStep &s) const;
    bool has_exit(Side s) const;
    /// Boundary sides that exist, restricted to `wanted`.
    BoundarySet exits(BoundarySet wanted) const;

   private:
    const Patch *p_;
    bool dual_;
};

}  // namespace layercode

#endif
