#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "graphcfg/graph.hpp"

namespace graphcfg {

// Cell key over a subdivided graph: 0..V-1 name vertex cells, V..V+E-1 edge
// cells (in graph edge order).
using cell_key = uint32_t;

struct BuildOptions {
    // Total-cell guard; exceeding it raises resource_error before allocation.
    uint64_t cell_cap = 100000000ULL;
    // 0 = runtime default worker count, 1 = serial path.
    int threads = 0;
};

// Discrete configuration space of `tokens` labeled tokens: cells are ordered
// tuples of pairwise-disjoint closed graph cells, dimension = number of edge
// coordinates. Cells are stored flat per dimension in lexicographic key
// order; every index handed out (boundary, collapse, exports) refers to that
// ordering, which is identical for the serial and parallel builders.
class CubeComplex {
public:
    std::shared_ptr<const SubdividedGraph> graph;
    uint32_t tokens = 0;
    uint32_t vkeys = 0;  // vertex key count
    uint32_t nkeys = 0;  // vertex + edge key count
    std::vector<std::vector<cell_key>> cells;       // [d]: flat, `tokens` keys per cell
    std::vector<std::vector<uint32_t>> face_index;  // [d]: 2d entries per cell, d >= 1
    std::vector<std::vector<int8_t>> face_sign;     // parallel to face_index

    uint32_t dim() const;
    size_t cell_count(uint32_t d) const {
        return d < cells.size() ? cells[d].size() / tokens : 0;
    }
    std::vector<long long> f_vector() const;
    uint64_t total_cells() const;
    std::span<const cell_key> cell(uint32_t d, size_t i) const {
        return {cells[d].data() + i * tokens, tokens};
    }
    // Index of the cell with these keys in dimension d, -1 if absent.
    long long find_cell(uint32_t d, std::span<const cell_key> keys) const;
    bool key_is_edge(cell_key k) const { return k >= vkeys; }
    std::string key_name(cell_key k) const;
};

CubeComplex build_complex(const SubdividedGraph& g, uint32_t tokens,
                          const BuildOptions& opts = {});
// Reference single-thread enumerator, kept so the parallel kernel can be
// compared against it cell-for-cell.
CubeComplex build_complex_serial(const SubdividedGraph& g, uint32_t tokens,
                                 const BuildOptions& opts = {});

// Signed boundary, one column per d-cell, coefficients accumulated.
struct SparseMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<std::vector<std::pair<uint32_t, int32_t>>> col;
};
SparseMatrix boundary_matrix(const CubeComplex& c, uint32_t d);

// Full subcomplex on the cells keep() selects. The selection must be closed
// under faces; a missing face raises invalid_argument.
CubeComplex subcomplex(const CubeComplex& c,
                       const std::function<bool(uint32_t, std::span<const cell_key>)>& keep);
// Cells whose token-th coordinate (1-based) is the vertex cell at p.
CubeComplex sigma_subcomplex(const CubeComplex& c, const std::string& p, uint32_t token);
// Cells avoiding the closed star of p (p's vertex cell and incident edges).
CubeComplex closed_star_complement(const CubeComplex& c, const std::string& p);

std::string complex_to_json(const CubeComplex& c, bool include_cells);
// 1-skeleton in DOT form; refuses complexes with more than 10^4 0-cells.
std::string skeleton_to_dot(const CubeComplex& c);

} // namespace graphcfg
