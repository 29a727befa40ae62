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

#ifndef LAYERCODE_CSS_CODE_H
#define LAYERCODE_CSS_CODE_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "layercode/f2.h"
#include "layercode/rng.h"

namespace layercode {

enum class PauliType : uint8_t { X, Z };

/// A CSS code given by its X-type and Z-type parity check matrices.
struct CssCode {
    BitMatrix hx;
    BitMatrix hz;

    CssCode() = default;
    CssCode(BitMatrix hx, BitMatrix hz);

    size_t n() const {
        return hx.cols();
    }
    size_t num_x_checks() const {
        return hx.rows();
    }
    size_t num_z_checks() const {
        return hz.rows();
    }
    size_t k() const;
    /// Max row or column weight over both matrices.
    size_t sparsity() const;
    /// The code with the roles of X and Z exchanged.
    CssCode swapped() const;

    static CssCode steane();

    /// Two labelled blocks: "HX" then matrix text, "HZ" then matrix text.
    void write_text(std::ostream &out) const;
    static CssCode read_text(std::istream &in);
    std::string to_text() const;
    static CssCode from_text(const std::string &text);
};

enum class ViolationKind : uint8_t { Shape, Orthogonality, RateOutOfRange, NoLogicals };

struct Violation {
    ViolationKind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const {
        return violations.empty();
    }
};

struct ValidateOptions {
    bool check_rates = true;
    bool require_logicals = false;
};

ValidationReport validate(const CssCode &code, ValidateOptions options = {});

/// HZ uniform with num_z rows, then HX uniform from its orthogonal complement.
CssCode sample_css(size_t n, size_t num_x, size_t num_z, Rng &rng);

/// Smallest weights (dX, dZ) of nontrivial logicals, searching weights up to w_max.
std::optional<std::pair<size_t, size_t>> min_distance(const CssCode &code, size_t w_max);

/// Exact energy barrier for logical operators of the given Pauli type.
size_t energy_barrier_bruteforce(const CssCode &code, PauliType type);

struct YElement {
    BitVector vec;
    size_t row;
    /// Number of leading entries kept.
    size_t cut;
};
using YSet = std::vector<YElement>;

YSet build_y_set(const BitMatrix &hz);

/// XOR of a minimum-cardinality YSet subset whose HX-syndrome matches.
BitVector decode_min_y_weight(const CssCode &code, const BitVector &syndrome);
/// Minimum-weight vector with the given HX-syndrome; ties go to the
/// lexicographically smallest sorted support.
BitVector decode_min_weight(const CssCode &code, const BitVector &syndrome);

/// Lookup-table decoder for Z errors of a small input code, keyed by HX-syndrome.
class InputDecoder {
   public:
    enum class Kind : uint8_t { MinWeight, MinYWeight };
    InputDecoder(const CssCode &code, Kind kind);
    Kind kind() const {
        return kind_;
    }
    BitVector decode(const BitVector &syndrome) const;

   private:
    Kind kind_;
    size_t n_;
    size_t num_checks_;
    std::vector<int64_t> table_index_;
    std::vector<BitVector> corrections_;
};

/// Nontrivial logical representatives (Z-type in `z`, X-type in `x`) with
/// z[a].dot(x[b]) == (a == b).
struct SymplecticBasis {
    std::vector<BitVector> z;
    std::vector<BitVector> x;
};
SymplecticBasis logical_pairs(const CssCode &code);

}  // namespace layercode

#endif
