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

#ifndef LAYERCODE_CLUSTER_DECODER_H
#define LAYERCODE_CLUSTER_DECODER_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "layercode/f2.h"
#include "layercode/layer_code.h"

namespace layercode {

enum class EdgeClass : uint8_t { Ignored, SmoothBoundary, RoughBoundary, Regional, Defect };

/// Vertices are Z-checks, hyperedges are qubits.
struct DecodingHypergraph {
    size_t num_vertices = 0;
    std::vector<std::vector<uint32_t>> edge_vertices;
    std::vector<EdgeClass> edge_class;
    /// Sorted distinct region ids of a defect edge; empty otherwise.
    std::vector<std::vector<uint32_t>> edge_type;
    std::vector<uint32_t> region;

    std::vector<std::vector<uint32_t>> vertex_edges;
    /// Vertex touches a smooth-boundary or defect edge.
    std::vector<uint8_t> boundary_vertex;

    size_t num_edges() const {
        return edge_vertices.size();
    }
    /// Fills edge_type, vertex_edges and boundary_vertex from the rest.
    void finalize();
};

DecodingHypergraph build_hypergraph(const LayerCode &code);

/// Generic hypergraph; 2-vertex edges listed in `rough` are labelled rough.
DecodingHypergraph make_hypergraph(size_t num_vertices, std::vector<std::vector<uint32_t>> edges,
                                   std::vector<uint32_t> region, const std::vector<uint32_t> &rough = {});

struct ClusterAnalysis {
    /// Components of the cluster under its non-defect edges.
    std::vector<std::vector<uint32_t>> subregions;
    std::vector<uint8_t> parity;
    std::vector<uint8_t> has_smooth_edge;
    /// One defect edge per distinct parity footprint, ordered by footprint.
    std::vector<uint32_t> defect_reps;
    std::vector<std::vector<uint32_t>> rep_footprint;
    /// Defect edges to flip, if the correctability equations are solvable.
    std::optional<std::vector<uint32_t>> assignment;
};

/// `vertices` is the cluster, `excited` the current syndrome over all vertices.
ClusterAnalysis analyze_cluster(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                                const std::vector<uint8_t> &excited);
std::optional<std::vector<uint32_t>> is_correctable(const DecodingHypergraph &g,
                                                    const std::vector<uint32_t> &vertices,
                                                    const std::vector<uint8_t> &excited);
/// Edges (qubits) whose flip clears every excitation of the cluster.
std::vector<uint32_t> extract_correction(const DecodingHypergraph &g, const std::vector<uint32_t> &vertices,
                                         const std::vector<uint8_t> &excited,
                                         const std::vector<uint32_t> &assignment);

enum class GrowthSchedule : uint8_t { Linear, Exponential };

struct ClusterDecoderOptions {
    GrowthSchedule schedule = GrowthSchedule::Linear;
    /// Re-check a cluster only after it merged, reached a boundary or defect
    /// vertex, or stopped growing.
    bool lazy_recheck = true;
    /// JSON lines, one per growth step.
    std::ostream *trace = nullptr;
};

/// X-type correction whose Z-check syndrome equals `syndrome`.
BitVector cluster_decode(const DecodingHypergraph &g, const BitVector &syndrome,
                         const ClusterDecoderOptions &options = {});

}  // namespace layercode

#endif
