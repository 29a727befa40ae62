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

#ifndef LAYERCODE_RNG_H
#define LAYERCODE_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace layercode {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream coordinates (point, trial index, ...)
/// so every trial owns an independent, worker-count-free stream.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> coords) {
    auto mix = [](uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    uint64_t h = mix(master);
    for (uint64_t c : coords) {
        h = mix(h ^ mix(c));
    }
    return h;
}

}  // namespace layercode

#endif
