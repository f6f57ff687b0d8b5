#include "graphcfg/complex.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#ifdef GRAPHCFG_HAS_OPENMP
#include <omp.h>
#endif

namespace graphcfg {

namespace {

// Shared DFS core: walks all disjoint ordered tuples in lexicographic key
// order. Disjointness is tracked as occupancy of graph vertices, so the test
// per key is O(1) with O(1) undo.
struct Enumerator {
    uint32_t tokens;
    uint32_t vkeys;
    uint32_t nkeys;
    std::vector<std::pair<uint32_t, uint32_t>> ends;  // per edge key
    std::vector<uint8_t> occ;
    std::vector<cell_key> tup;

    explicit Enumerator(const SubdividedGraph& g, uint32_t n)
        : tokens(n),
          vkeys(g.graph.vertex_count()),
          nkeys(g.graph.vertex_count() + g.graph.edge_count()),
          occ(g.graph.vertex_count(), 0),
          tup(n, 0) {
        ends.reserve(g.graph.edge_count());
        for (const auto& e : g.graph.edges()) ends.emplace_back(e.u, e.v);
    }

    bool try_occupy(cell_key k) {
        if (k < vkeys) {
            if (occ[k]) return false;
            occ[k] = 1;
            return true;
        }
        auto [u, v] = ends[k - vkeys];
        if (occ[u] || occ[v]) return false;
        occ[u] = occ[v] = 1;
        return true;
    }

    void release(cell_key k) {
        if (k < vkeys) {
            occ[k] = 0;
        } else {
            auto [u, v] = ends[k - vkeys];
            occ[u] = occ[v] = 0;
        }
    }

    template <class Emit>
    void walk(uint32_t depth, uint32_t edges_so_far, Emit&& emit) {
        for (cell_key k = 0; k < nkeys; ++k) {
            if (!try_occupy(k)) continue;
            tup[depth] = k;
            uint32_t d = edges_so_far + (k >= vkeys ? 1 : 0);
            if (depth + 1 == tokens)
                emit(d, tup);
            else
                walk(depth + 1, d, emit);
            release(k);
        }
    }
};

void throw_cap(uint64_t total, uint64_t cap) {
    throw resource_error("complex would have " + std::to_string(total) +
                         " cells, exceeding the cap of " + std::to_string(cap) +
                         " (set GRAPHCFG_CELL_CAP or BuildOptions::cell_cap to raise it)");
}

// Boundary of every d-cell: the k-th edge coordinate (1-based, in token
// order) replaced by an endpoint contributes sign (-1)^k, positive for the
// smaller-indexed endpoint. Exactly 2d entries per cell.
void build_boundary(CubeComplex& c, int threads) {
    (void)threads;
    c.face_index.assign(c.cells.size(), {});
    c.face_sign.assign(c.cells.size(), {});
    const auto& edges = c.graph->graph.edges();
    for (uint32_t d = 1; d < c.cells.size(); ++d) {
        size_t count = c.cell_count(d);
        if (count == 0) continue;
        auto& fidx = c.face_index[d];
        auto& fsgn = c.face_sign[d];
        fidx.assign(count * 2 * d, 0);
        fsgn.assign(count * 2 * d, 0);
        bool missing = false;
#ifdef GRAPHCFG_HAS_OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads()) \
    reduction(|| : missing)
#endif
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            std::vector<cell_key> face(c.tokens);
            std::copy_n(c.cells[d].data() + i * c.tokens, c.tokens, face.data());
            uint32_t k = 0;
            for (uint32_t pos = 0; pos < c.tokens; ++pos) {
                cell_key key = face[pos];
                if (key < c.vkeys) continue;
                ++k;
                const auto& e = edges[key - c.vkeys];
                cell_key lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
                int8_t s = (k % 2 == 1) ? -1 : 1;
                size_t slot = (static_cast<size_t>(i) * d + (k - 1)) * 2;
                face[pos] = lo;
                long long fi = c.find_cell(d - 1, face);
                face[pos] = hi;
                long long gi = c.find_cell(d - 1, face);
                face[pos] = key;
                if (fi < 0 || gi < 0) {
                    missing = true;
                    continue;
                }
                fidx[slot] = static_cast<uint32_t>(fi);
                fsgn[slot] = s;
                fidx[slot + 1] = static_cast<uint32_t>(gi);
                fsgn[slot + 1] = static_cast<int8_t>(-s);
            }
        }
        if (missing) throw invalid_argument("cell set is not closed under faces");
    }
}

CubeComplex assemble(const SubdividedGraph& g, uint32_t tokens,
                     std::vector<std::vector<cell_key>> cells, int threads) {
    CubeComplex c;
    c.graph = std::make_shared<const SubdividedGraph>(g);
    c.tokens = tokens;
    c.vkeys = g.graph.vertex_count();
    c.nkeys = c.vkeys + g.graph.edge_count();
    c.cells = std::move(cells);
    build_boundary(c, threads);
    return c;
}

} // namespace

uint32_t CubeComplex::dim() const {
    for (uint32_t d = static_cast<uint32_t>(cells.size()); d-- > 0;)
        if (!cells[d].empty()) return d;
    return 0;
}

std::vector<long long> CubeComplex::f_vector() const {
    std::vector<long long> f(dim() + 1, 0);
    for (uint32_t d = 0; d < f.size(); ++d) f[d] = static_cast<long long>(cell_count(d));
    return f;
}

uint64_t CubeComplex::total_cells() const {
    uint64_t t = 0;
    for (uint32_t d = 0; d < cells.size(); ++d) t += cell_count(d);
    return t;
}

long long CubeComplex::find_cell(uint32_t d, std::span<const cell_key> keys) const {
    if (d >= cells.size()) return -1;
    const auto& arr = cells[d];
    size_t lo = 0, hi = arr.size() / tokens;
    while (lo < hi) {
        size_t mid = lo + (hi - lo) / 2;
        const cell_key* p = arr.data() + mid * tokens;
        int cmp = 0;
        for (uint32_t t = 0; t < tokens; ++t) {
            if (p[t] != keys[t]) {
                cmp = p[t] < keys[t] ? -1 : 1;
                break;
            }
        }
        if (cmp < 0)
            lo = mid + 1;
        else if (cmp > 0)
            hi = mid;
        else
            return static_cast<long long>(mid);
    }
    return -1;
}

std::string CubeComplex::key_name(cell_key k) const {
    if (k < vkeys) return "v:" + graph->graph.vertex_name(k);
    return "e:" + graph->graph.edge(k - vkeys).id;
}

CubeComplex build_complex_serial(const SubdividedGraph& g, uint32_t tokens,
                                 const BuildOptions& opts) {
    if (tokens < 1) throw invalid_argument("token count must be >= 1");
    if (!g.graph.is_simple()) throw invalid_argument("complex construction requires a simple graph");
    Enumerator en(g, tokens);
    std::vector<std::vector<cell_key>> cells(tokens + 1);
    uint64_t total = 0;
    en.walk(0, 0, [&](uint32_t d, const std::vector<cell_key>& tup) {
        if (++total > opts.cell_cap) throw_cap(total, opts.cell_cap);
        cells[d].insert(cells[d].end(), tup.begin(), tup.end());
    });
    return assemble(g, tokens, std::move(cells), 1);
}

CubeComplex build_complex(const SubdividedGraph& g, uint32_t tokens, const BuildOptions& opts) {
#ifndef GRAPHCFG_HAS_OPENMP
    return build_complex_serial(g, tokens, opts);
#else
    if (opts.threads == 1 || tokens == 1) return build_complex_serial(g, tokens, opts);
    if (tokens < 1) throw invalid_argument("token count must be >= 1");
    if (!g.graph.is_simple()) throw invalid_argument("complex construction requires a simple graph");

    int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
    uint32_t nkeys = g.graph.vertex_count() + g.graph.edge_count();
    uint32_t dims = tokens + 1;

    // Pass 1: count completions per (first key, dimension). The partition by
    // first key makes the later merge order-identical to the serial walk.
    std::vector<uint64_t> counts(static_cast<size_t>(nkeys) * dims, 0);
#pragma omp parallel num_threads(threads)
    {
        Enumerator en(g, tokens);
#pragma omp for schedule(dynamic)
        for (long long k0 = 0; k0 < static_cast<long long>(nkeys); ++k0) {
            if (!en.try_occupy(static_cast<cell_key>(k0))) continue;
            en.tup[0] = static_cast<cell_key>(k0);
            uint32_t d0 = k0 >= en.vkeys ? 1u : 0u;
            en.walk(1, d0, [&](uint32_t d, const std::vector<cell_key>&) {
                ++counts[static_cast<size_t>(k0) * dims + d];
            });
            en.release(static_cast<cell_key>(k0));
        }
    }

    uint64_t total = 0;
    std::vector<uint64_t> dim_total(dims, 0);
    for (uint32_t d = 0; d < dims; ++d)
        for (uint32_t k = 0; k < nkeys; ++k) dim_total[d] += counts[static_cast<size_t>(k) * dims + d];
    for (uint32_t d = 0; d < dims; ++d) total += dim_total[d];
    if (total > opts.cell_cap) throw_cap(total, opts.cell_cap);

    // offsets[k0*dims+d] = first cell slot for that first key in dimension d.
    std::vector<uint64_t> offsets(static_cast<size_t>(nkeys) * dims, 0);
    for (uint32_t d = 0; d < dims; ++d) {
        uint64_t run = 0;
        for (uint32_t k = 0; k < nkeys; ++k) {
            offsets[static_cast<size_t>(k) * dims + d] = run;
            run += counts[static_cast<size_t>(k) * dims + d];
        }
    }

    std::vector<std::vector<cell_key>> cells(dims);
    for (uint32_t d = 0; d < dims; ++d) cells[d].assign(dim_total[d] * tokens, 0);

    // Pass 2: fill each first-key slice at its precomputed offsets.
#pragma omp parallel num_threads(threads)
    {
        Enumerator en(g, tokens);
        std::vector<uint64_t> cursor(dims, 0);
#pragma omp for schedule(dynamic)
        for (long long k0 = 0; k0 < static_cast<long long>(nkeys); ++k0) {
            if (!en.try_occupy(static_cast<cell_key>(k0))) continue;
            en.tup[0] = static_cast<cell_key>(k0);
            std::fill(cursor.begin(), cursor.end(), 0);
            uint32_t d0 = k0 >= en.vkeys ? 1u : 0u;
            en.walk(1, d0, [&](uint32_t d, const std::vector<cell_key>& tup) {
                uint64_t slot = offsets[static_cast<size_t>(k0) * dims + d] + cursor[d]++;
                std::copy(tup.begin(), tup.end(), cells[d].begin() + slot * tokens);
            });
            en.release(static_cast<cell_key>(k0));
        }
    }

    return assemble(g, tokens, std::move(cells), threads);
#endif
}

SparseMatrix boundary_matrix(const CubeComplex& c, uint32_t d) {
    if (d < 1 || d > c.dim())
        throw invalid_argument("boundary dimension " + std::to_string(d) + " out of range 1.." +
                               std::to_string(c.dim()));
    SparseMatrix m;
    m.rows = c.cell_count(d - 1);
    m.cols = c.cell_count(d);
    m.col.resize(m.cols);
    for (size_t i = 0; i < m.cols; ++i) {
        auto& col = m.col[i];
        for (uint32_t s = 0; s < 2 * d; ++s) {
            uint32_t row = c.face_index[d][i * 2 * d + s];
            int32_t coeff = c.face_sign[d][i * 2 * d + s];
            bool merged = false;
            for (auto& [r, v] : col)
                if (r == row) {
                    v += coeff;
                    merged = true;
                    break;
                }
            if (!merged) col.emplace_back(row, coeff);
        }
        std::erase_if(col, [](const auto& e) { return e.second == 0; });
        std::sort(col.begin(), col.end());
    }
    return m;
}

CubeComplex subcomplex(const CubeComplex& c,
                       const std::function<bool(uint32_t, std::span<const cell_key>)>& keep) {
    std::vector<std::vector<cell_key>> kept(c.cells.size());
    for (uint32_t d = 0; d < c.cells.size(); ++d) {
        for (size_t i = 0; i < c.cell_count(d); ++i) {
            auto span = c.cell(d, i);
            if (keep(d, span)) kept[d].insert(kept[d].end(), span.begin(), span.end());
        }
    }
    CubeComplex out;
    out.graph = c.graph;
    out.tokens = c.tokens;
    out.vkeys = c.vkeys;
    out.nkeys = c.nkeys;
    out.cells = std::move(kept);
    build_boundary(out, 1);
    return out;
}

CubeComplex sigma_subcomplex(const CubeComplex& c, const std::string& p, uint32_t token) {
    auto idx = c.graph->graph.vertex_index(p);
    if (!idx) throw invalid_argument("vertex '" + p + "' not in the subdivided graph");
    if (token < 1 || token > c.tokens)
        throw invalid_argument("token index " + std::to_string(token) + " out of range 1.." +
                               std::to_string(c.tokens));
    cell_key key = *idx;
    return subcomplex(c, [key, token](uint32_t, std::span<const cell_key> keys) {
        return keys[token - 1] == key;
    });
}

CubeComplex closed_star_complement(const CubeComplex& c, const std::string& p) {
    auto idx = c.graph->graph.vertex_index(p);
    if (!idx) throw invalid_argument("vertex '" + p + "' not in the subdivided graph");
    cell_key pv = *idx;
    std::vector<uint8_t> banned(c.nkeys, 0);
    banned[pv] = 1;
    const auto& edges = c.graph->graph.edges();
    for (uint32_t e = 0; e < edges.size(); ++e)
        if (edges[e].u == pv || edges[e].v == pv) banned[c.vkeys + e] = 1;
    return subcomplex(c, [&banned](uint32_t, std::span<const cell_key> keys) {
        for (cell_key k : keys)
            if (banned[k]) return false;
        return true;
    });
}

std::string complex_to_json(const CubeComplex& c, bool include_cells) {
    nlohmann::ordered_json j;
    j["tokens"] = c.tokens;
    j["f_vector"] = c.f_vector();
    j["dim"] = c.dim();
    if (include_cells) {
        auto cells = nlohmann::ordered_json::array();
        for (uint32_t d = 0; d <= c.dim(); ++d) {
            auto layer = nlohmann::ordered_json::array();
            for (size_t i = 0; i < c.cell_count(d); ++i) {
                auto tup = nlohmann::ordered_json::array();
                for (cell_key k : c.cell(d, i)) tup.push_back(c.key_name(k));
                layer.push_back(std::move(tup));
            }
            cells.push_back(std::move(layer));
        }
        j["cells"] = std::move(cells);
    }
    return j.dump(2);
}

std::string skeleton_to_dot(const CubeComplex& c) {
    if (c.cell_count(0) > 10000)
        throw resource_error("DOT export limited to 10^4 0-cells, complex has " +
                             std::to_string(c.cell_count(0)));
    std::ostringstream os;
    os << "graph skeleton {\n";
    for (size_t i = 0; i < c.cell_count(0); ++i) {
        os << "  n" << i << " [label=\"";
        auto span = c.cell(0, i);
        for (uint32_t t = 0; t < c.tokens; ++t) {
            if (t) os << ",";
            os << c.graph->graph.vertex_name(span[t]);
        }
        os << "\"];\n";
    }
    if (c.cells.size() > 1)
        for (size_t i = 0; i < c.cell_count(1); ++i)
            os << "  n" << c.face_index[1][i * 2] << " -- n" << c.face_index[1][i * 2 + 1] << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace graphcfg
