#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphcfg/complex.hpp"
#include "graphcfg/graph.hpp"

namespace graphcfg {

// Record of a greedy elementary-collapse run. Cells are addressed by global
// id: offsets[d] + index within dimension d of the input complex.
struct CollapseTrace {
    std::vector<std::pair<uint64_t, uint64_t>> pairs;  // (free face, its coface)
    std::vector<uint64_t> offsets;                     // first global id per dimension
    uint32_t dim_before = 0;
    uint32_t dim_after = 0;
    uint64_t cells_before = 0;
    uint64_t cells_after = 0;
    CubeComplex residual;
};

// Repeatedly removes the lowest-id free face together with its unique alive
// coface until no free face remains. Homotopy-preserving, so Euler
// characteristic and Betti numbers survive; the residual is face-closed.
// Serial by contract: the pairing sequence is part of the output.
CollapseTrace collapse(const CubeComplex& c);

// True if some cell has exactly one alive coface of codimension 1.
bool has_free_face(const CubeComplex& c);

struct DimensionReport {
    uint32_t tokens = 0;
    uint32_t factor = 0;
    size_t essential = 0;  // essential vertices of the input graph
    uint32_t dim_before = 0;
    uint32_t dim_after = 0;
    bool circle = false;  // cycle graphs stabilize at dimension 1 regardless
    bool violation = false;
};
// Collapse the token complex and compare the residual dimension against the
// essential vertex count.
DimensionReport dimension_report(const Graph& g, uint32_t tokens, uint32_t factor);

std::string trace_to_json(const CollapseTrace& t, bool include_pairs = true);

} // namespace graphcfg
