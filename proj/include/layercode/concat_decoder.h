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

#ifndef LAYERCODE_CONCAT_DECODER_H
#define LAYERCODE_CONCAT_DECODER_H

#include "layercode/css_code.h"
#include "layercode/f2.h"
#include "layercode/layer_code.h"

namespace layercode {

/// Outcome of the checks run between stages.
struct StageReport {
    bool first_family_clear = false;   // after stage 1
    bool second_family_clear = false;  // after stage 2 (Q-layers and the first family)
    bool last_family_even = false;     // after stage 3
    size_t input_syndrome_weight = 0;
};

/// Decodes a Z error from its X-check syndrome, or an X error from its
/// Z-check syndrome when `error_type` is X. For X errors `input_decoder`
/// must be built on `code.input.swapped()`.
///
/// Z errors are cleared on Z-layers, then Q-layers, then fixed across
/// X-layers through the input decoder and full-height Q strings, then
/// paired within X-layers. X errors run the same stages with the roles of
/// X- and Z-layers exchanged.
BitVector concat_decode(const LayerCode &code, const BitVector &syndrome, const InputDecoder &input_decoder,
                        PauliType error_type = PauliType::Z, StageReport *report = nullptr);

/// Variant whose first two stages send every excitation straight to the
/// top of its layer instead of matching.
BitVector concat_decode_modified(const LayerCode &code, const BitVector &syndrome,
                                 const InputDecoder &input_decoder, PauliType error_type = PauliType::Z,
                                 StageReport *report = nullptr);

}  // namespace layercode

#endif
