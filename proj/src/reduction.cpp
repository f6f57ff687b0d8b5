#include "graphcfg/reduction.hpp"

#include <functional>
#include <queue>

#include <json.hpp>

#include "graphcfg/error.hpp"

namespace graphcfg {

namespace {

// Flat coface adjacency for dimension d: for each d-cell, the (d+1)-cells it
// bounds. Built by inverting face_index[d+1].
struct CofaceLists {
    std::vector<std::vector<uint32_t>> off;  // [d]: size count_d + 1
    std::vector<std::vector<uint32_t>> idx;  // [d]: coface indices

    explicit CofaceLists(const CubeComplex& c) {
        uint32_t dim = c.dim();
        off.resize(dim + 1);
        idx.resize(dim + 1);
        for (uint32_t d = 0; d <= dim; ++d) {
            size_t nd = c.cell_count(d);
            off[d].assign(nd + 1, 0);
            if (d == dim) continue;
            const auto& fi = c.face_index[d + 1];
            for (uint32_t f : fi) ++off[d][f + 1];
            for (size_t i = 1; i <= nd; ++i) off[d][i] += off[d][i - 1];
            idx[d].resize(fi.size());
            std::vector<uint32_t> cursor(off[d].begin(), off[d].end() - 1);
            size_t per = 2 * (d + 1);
            for (size_t j = 0; j < fi.size(); ++j) {
                idx[d][cursor[fi[j]]++] = static_cast<uint32_t>(j / per);
            }
        }
    }
};

} // namespace

CollapseTrace collapse(const CubeComplex& c) {
    uint32_t dim = c.dim();
    CollapseTrace t;
    t.dim_before = dim;
    t.cells_before = c.total_cells();
    t.offsets.assign(dim + 1, 0);
    for (uint32_t d = 1; d <= dim; ++d) {
        t.offsets[d] = t.offsets[d - 1] + c.cell_count(d - 1);
    }

    CofaceLists cof(c);
    std::vector<std::vector<char>> alive(dim + 1);
    std::vector<std::vector<uint32_t>> cnt(dim + 1);  // alive cofaces per cell
    for (uint32_t d = 0; d <= dim; ++d) {
        size_t nd = c.cell_count(d);
        alive[d].assign(nd, 1);
        cnt[d].resize(nd);
        for (size_t i = 0; i < nd; ++i) cnt[d][i] = cof.off[d][i + 1] - cof.off[d][i];
    }

    std::priority_queue<uint64_t, std::vector<uint64_t>, std::greater<>> heap;
    for (uint32_t d = 0; d <= dim; ++d) {
        for (size_t i = 0; i < cnt[d].size(); ++i) {
            if (cnt[d][i] == 1) heap.push(t.offsets[d] + i);
        }
    }

    auto drop_coface = [&](uint32_t d, uint32_t face) {
        // The coface count never rises, so a cell reaches 1 at most once.
        if (--cnt[d][face] == 1 && alive[d][face]) heap.push(t.offsets[d] + face);
    };

    while (!heap.empty()) {
        uint64_t g = heap.top();
        heap.pop();
        uint32_t d = dim;
        while (t.offsets[d] > g) --d;
        uint32_t i = static_cast<uint32_t>(g - t.offsets[d]);
        if (!alive[d][i] || cnt[d][i] != 1) continue;

        uint32_t j = UINT32_MAX;
        for (uint32_t s = cof.off[d][i]; s < cof.off[d][i + 1]; ++s) {
            if (alive[d + 1][cof.idx[d][s]]) {
                j = cof.idx[d][s];
                break;
            }
        }
        if (j == UINT32_MAX) throw error("collapse: free-face count out of sync");
        t.pairs.emplace_back(g, t.offsets[d + 1] + j);
        alive[d][i] = 0;
        alive[d + 1][j] = 0;

        size_t per = 2 * (d + 1);
        for (size_t s = 0; s < per; ++s) {
            drop_coface(d, c.face_index[d + 1][j * per + s]);
        }
        if (d >= 1) {
            for (size_t s = 0; s < 2u * d; ++s) {
                drop_coface(d - 1, c.face_index[d][i * 2 * d + s]);
            }
        }
    }

    t.residual = subcomplex(c, [&](uint32_t d, std::span<const cell_key> keys) {
        long long idx = c.find_cell(d, keys);
        return idx >= 0 && alive[d][static_cast<size_t>(idx)] != 0;
    });
    t.dim_after = t.residual.dim();
    t.cells_after = t.residual.total_cells();
    return t;
}

bool has_free_face(const CubeComplex& c) {
    CofaceLists cof(c);
    for (uint32_t d = 0; d <= c.dim(); ++d) {
        for (size_t i = 0; i < c.cell_count(d); ++i) {
            if (cof.off[d][i + 1] - cof.off[d][i] == 1) return true;
        }
    }
    return false;
}

DimensionReport dimension_report(const Graph& g, uint32_t tokens, uint32_t factor) {
    DimensionReport rep;
    rep.tokens = tokens;
    rep.factor = factor;
    rep.essential = g.essential_vertices().size();
    rep.circle = g.is_connected() && g.is_circle();
    CubeComplex c = build_complex(subdivide(g, factor), tokens);
    CollapseTrace t = collapse(c);
    rep.dim_before = t.dim_before;
    rep.dim_after = t.dim_after;
    rep.violation = rep.dim_after > rep.essential && !(rep.circle && rep.dim_after <= 1);
    return rep;
}

std::string trace_to_json(const CollapseTrace& t, bool include_pairs) {
    nlohmann::ordered_json j;
    j["cells_before"] = t.cells_before;
    j["cells_after"] = t.cells_after;
    j["dim_before"] = t.dim_before;
    j["dim_after"] = t.dim_after;
    j["offsets"] = t.offsets;
    j["pair_count"] = t.pairs.size();
    if (include_pairs) {
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (auto& [a, b] : t.pairs) pairs.push_back({a, b});
        j["pairs"] = std::move(pairs);
    }
    j["residual_f_vector"] = t.residual.f_vector();
    return j.dump(2);
}

} // namespace graphcfg
