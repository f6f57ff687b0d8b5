#include "graphcfg/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#ifdef GRAPHCFG_HAS_OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "graphcfg/error.hpp"

namespace graphcfg {

long long euler_characteristic(const CubeComplex& c) {
    long long chi = 0;
    int sign = 1;
    for (long long f : c.f_vector()) {
        chi += sign * f;
        sign = -sign;
    }
    return chi;
}

namespace {

struct DisjointSet {
    std::vector<uint32_t> parent;
    explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) { parent[find(a)] = find(b); }
};

int64_t mod_norm(int64_t v, int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

int64_t mod_inv(int64_t a, int64_t p) {
    // Extended Euclid; p is prime and a != 0 mod p.
    int64_t t = 0, new_t = 1, r = p, new_r = mod_norm(a, p);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw invalid_argument("gfp_rank: prime is not prime or zero pivot");
    return mod_norm(t, p);
}

// Bidirectional sparse matrix over GF(p) supporting Markowitz-style pivot
// selection: cheapest active column (fewest nonzeros, lowest index first),
// then within it the row with fewest nonzeros.
struct GfpElim {
    int64_t p;
    std::vector<std::map<uint32_t, int64_t>> cols;
    std::vector<std::set<uint32_t>> row_cols;
    std::set<std::pair<size_t, uint32_t>> queue;  // (nnz, col), active nonempty cols

    GfpElim(const SparseMatrix& m, int64_t prime) : p(prime), cols(m.cols), row_cols(m.rows) {
        for (uint32_t c = 0; c < m.cols; ++c) {
            for (auto [r, v] : m.col[c]) {
                int64_t vv = mod_norm(v, p);
                if (vv == 0) continue;
                cols[c][r] = vv;
                row_cols[r].insert(c);
            }
            if (!cols[c].empty()) queue.insert({cols[c].size(), c});
        }
    }

    // cols[dst] += lambda * cols[src] (mod p), maintaining the transpose and queue.
    void axpy(uint32_t dst, int64_t lambda, const std::map<uint32_t, int64_t>& src) {
        size_t before = cols[dst].size();
        for (auto [r, v] : src) {
            auto it = cols[dst].find(r);
            int64_t nv = mod_norm((it == cols[dst].end() ? 0 : it->second) + lambda % p * v, p);
            if (nv == 0) {
                if (it != cols[dst].end()) {
                    cols[dst].erase(it);
                    row_cols[r].erase(dst);
                }
            } else if (it == cols[dst].end()) {
                cols[dst].emplace(r, nv);
                row_cols[r].insert(dst);
            } else {
                it->second = nv;
            }
        }
        size_t after = cols[dst].size();
        if (after != before) {
            queue.erase({before, dst});
            if (after > 0) queue.insert({after, dst});
        }
    }

    size_t run() {
        size_t rank = 0;
        while (!queue.empty()) {
            auto [nnz, c] = *queue.begin();
            queue.erase(queue.begin());
            // Pick the pivot row with the fewest active columns.
            uint32_t r = cols[c].begin()->first;
            size_t best = SIZE_MAX;
            for (auto [row, v] : cols[c]) {
                (void)v;
                if (row_cols[row].size() < best || (row_cols[row].size() == best && row < r)) {
                    best = row_cols[row].size();
                    r = row;
                }
            }
            ++rank;
            int64_t inv = mod_inv(cols[c].at(r), p);
            std::vector<uint32_t> others(row_cols[r].begin(), row_cols[r].end());
            std::map<uint32_t, int64_t> pivot = std::move(cols[c]);
            for (auto [row, v] : pivot) {
                (void)v;
                row_cols[row].erase(c);
            }
            cols[c].clear();
            for (uint32_t c2 : others) {
                if (c2 == c) continue;
                int64_t lambda = p - mod_norm(cols[c2].at(r) * inv % p, p);
                axpy(c2, lambda, pivot);
            }
        }
        return rank;
    }
};

} // namespace

long long connected_components(const CubeComplex& c) {
    size_t n0 = c.cell_count(0);
    if (n0 == 0) return 0;
    DisjointSet ds(n0);
    size_t n1 = c.cell_count(1);
    for (size_t i = 0; i < n1; ++i) {
        ds.unite(c.face_index[1][i * 2], c.face_index[1][i * 2 + 1]);
    }
    std::set<uint32_t> roots;
    for (uint32_t v = 0; v < n0; ++v) roots.insert(ds.find(v));
    return static_cast<long long>(roots.size());
}

size_t gfp_rank(const SparseMatrix& m, int64_t prime) {
    if (prime < 2) throw invalid_argument("gfp_rank: prime must be >= 2");
    if (m.rows == 0 || m.cols == 0) return 0;
    GfpElim e(m, prime);
    return e.run();
}

std::vector<long long> betti_numbers(const CubeComplex& c, int64_t prime) {
    uint32_t dim = c.dim();
    std::vector<size_t> rank(dim + 2, 0);  // rank[d] = rank bd_d, rank[dim+1] = 0
    std::vector<std::string> failure(dim + 2);
#ifdef GRAPHCFG_HAS_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int d = 1; d <= static_cast<int>(dim); ++d) {
        try {
            rank[d] = gfp_rank(boundary_matrix(c, d), prime);
        } catch (const std::exception& ex) {
            failure[d] = ex.what();
        }
    }
    for (uint32_t d = 1; d <= dim; ++d) {
        if (!failure[d].empty()) throw error(failure[d]);
    }

    std::vector<long long> f = c.f_vector();
    std::vector<long long> betti(dim + 1, 0);
    for (uint32_t d = 0; d <= dim; ++d) {
        betti[d] = f[d] - static_cast<long long>(rank[d]) - static_cast<long long>(rank[d + 1]);
        if (betti[d] < 0) {
            throw error("betti_numbers: negative rank balance in dimension " + std::to_string(d));
        }
    }
    long long b0_uf = connected_components(c);
    if (betti[0] != b0_uf) {
        throw error("betti_numbers: b_0 over GF(" + std::to_string(prime) + ") is " +
                    std::to_string(betti[0]) + " but union-find counts " + std::to_string(b0_uf) +
                    " components (modular rank drop; pick another prime)");
    }
    return betti;
}

namespace {

// Bidirectional sparse integer matrix for Smith reduction.
struct SnfElim {
    std::vector<std::map<uint32_t, bigint>> cols;
    std::vector<std::set<uint32_t>> row_cols;
    std::set<uint32_t> live_cols;

    explicit SnfElim(const SparseMatrix& m) : cols(m.cols), row_cols(m.rows) {
        for (uint32_t c = 0; c < m.cols; ++c) {
            for (auto [r, v] : m.col[c]) {
                if (v == 0) continue;
                cols[c][r] = v;
                row_cols[r].insert(c);
            }
            if (!cols[c].empty()) live_cols.insert(c);
        }
    }

    void set_entry(uint32_t c, uint32_t r, const bigint& v) {
        auto it = cols[c].find(r);
        if (v == 0) {
            if (it != cols[c].end()) {
                cols[c].erase(it);
                row_cols[r].erase(c);
                if (cols[c].empty()) live_cols.erase(c);
            }
        } else if (it == cols[c].end()) {
            if (cols[c].empty()) live_cols.insert(c);
            cols[c].emplace(r, v);
            row_cols[r].insert(c);
        } else {
            it->second = v;
        }
    }

    // col[dst] += q * col[src]
    void col_axpy(uint32_t dst, const bigint& q, uint32_t src) {
        std::vector<std::pair<uint32_t, bigint>> updates(cols[src].begin(), cols[src].end());
        for (auto& [r, v] : updates) {
            auto it = cols[dst].find(r);
            bigint nv = (it == cols[dst].end() ? bigint(0) : it->second) + q * v;
            set_entry(dst, r, nv);
        }
    }

    // row[dst] += q * row[src], expressed through the column storage.
    void row_axpy(uint32_t dst, const bigint& q, uint32_t src) {
        std::vector<uint32_t> touched(row_cols[src].begin(), row_cols[src].end());
        for (uint32_t c : touched) {
            bigint add = q * cols[c].at(src);
            auto it = cols[c].find(dst);
            bigint nv = (it == cols[c].end() ? bigint(0) : it->second) + add;
            set_entry(c, dst, nv);
        }
    }

    // Smallest |entry| among live columns; ties to lowest row then column.
    // A unit entry cannot be beaten, so the scan stops at the first one.
    bool find_pivot(uint32_t& pr, uint32_t& pc) const {
        bool found = false;
        bigint best;
        for (uint32_t c : live_cols) {
            for (auto& [r, v] : cols[c]) {
                bigint a = abs(v);
                if (!found || a < best || (a == best && (r < pr || (r == pr && c < pc)))) {
                    found = true;
                    best = a;
                    pr = r;
                    pc = c;
                    if (best == 1) return true;
                }
            }
        }
        return found;
    }

    std::vector<bigint> run() {
        std::vector<bigint> diag;
        uint32_t pr = 0, pc = 0;
        while (find_pivot(pr, pc)) {
            // Clear the pivot row and column; a nonzero remainder yields a
            // strictly smaller pivot, so the improvement loop terminates.
            for (;;) {
                bool improved = false;
                bigint pv = cols[pc].at(pr);
                std::vector<uint32_t> in_row(row_cols[pr].begin(), row_cols[pr].end());
                for (uint32_t c : in_row) {
                    if (c == pc) continue;
                    bigint q = -(cols[c].at(pr) / pv);
                    col_axpy(c, q, pc);
                    if (cols[c].count(pr)) {
                        pc = c;  // remainder is smaller than |pv|
                        improved = true;
                        break;
                    }
                }
                if (improved) continue;
                pv = cols[pc].at(pr);
                std::vector<std::pair<uint32_t, bigint>> in_col(cols[pc].begin(), cols[pc].end());
                for (auto& [r, v] : in_col) {
                    if (r == pr) continue;
                    bigint q = -(v / pv);
                    row_axpy(r, q, pr);
                    if (cols[pc].count(r)) {
                        pr = r;
                        improved = true;
                        break;
                    }
                }
                if (!improved) break;
            }
            diag.push_back(abs(cols[pc].at(pr)));
            set_entry(pc, pr, 0);
        }
        return diag;
    }
};

} // namespace

SmithResult smith_normal_form(const SparseMatrix& m, size_t column_cap) {
    if (m.cols > column_cap) {
        throw resource_error("smith_normal_form: " + std::to_string(m.cols) +
                             " columns exceed the cap of " + std::to_string(column_cap));
    }
    SmithResult out;
    if (m.rows == 0 || m.cols == 0) return out;
    SnfElim e(m);
    std::vector<bigint> diag = e.run();
    // Diagonal to invariant factors: replacing (a, b) by (gcd, lcm) sorts the
    // p-adic valuations, converging to the divisibility chain.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < diag.size(); ++i) {
            for (size_t j = i + 1; j < diag.size(); ++j) {
                if (diag[j] % diag[i] != 0) {
                    bigint g = gcd(diag[i], diag[j]);
                    diag[j] = diag[i] / g * diag[j];
                    diag[i] = g;
                    changed = true;
                }
            }
        }
    }
    std::sort(diag.begin(), diag.end());
    out.rank = diag.size();
    for (auto& d : diag) {
        if (d > 1) out.torsion.push_back(d);
    }
    return out;
}

IntegralHomology integral_homology(const CubeComplex& c, uint32_t d, size_t column_cap) {
    uint32_t dim = c.dim();
    if (d > dim) throw invalid_argument("integral_homology: dimension exceeds complex dimension");
    size_t r_d = (d >= 1) ? smith_normal_form(boundary_matrix(c, d), column_cap).rank : 0;
    SmithResult up;
    if (d + 1 <= dim) up = smith_normal_form(boundary_matrix(c, d + 1), column_cap);
    IntegralHomology h;
    h.rank = c.f_vector()[d] - static_cast<long long>(r_d) - static_cast<long long>(up.rank);
    h.torsion = up.torsion;
    return h;
}

bool rational_ranks_agree(const CubeComplex& c, int64_t prime, size_t column_cap) {
    for (uint32_t d = 1; d <= c.dim(); ++d) {
        SparseMatrix m = boundary_matrix(c, d);
        if (smith_normal_form(m, column_cap).rank != gfp_rank(m, prime)) return false;
    }
    return true;
}

InvariantReport invariant_report(const CubeComplex& c, int64_t prime, bool with_torsion,
                                 size_t snf_cap) {
    InvariantReport rep;
    rep.f_vector = c.f_vector();
    rep.euler = euler_characteristic(c);
    rep.betti = betti_numbers(c, prime);
    rep.prime = prime;
    uint32_t dim = c.dim();
    rep.torsion.assign(dim + 1, std::nullopt);
    if (!with_torsion) return rep;
    for (uint32_t d = 0; d <= dim; ++d) {
        if (d + 1 > dim) {
            rep.torsion[d] = std::vector<std::string>{};  // no incoming boundary
            continue;
        }
        if (c.cell_count(d + 1) > snf_cap) continue;  // left as "not computed"
        SmithResult up = smith_normal_form(boundary_matrix(c, d + 1), snf_cap);
        std::vector<std::string> t;
        for (auto& x : up.torsion) t.push_back(x.str());
        rep.torsion[d] = std::move(t);
    }
    return rep;
}

std::string report_to_json(const InvariantReport& r) {
    nlohmann::ordered_json j;
    j["f_vector"] = r.f_vector;
    j["euler"] = r.euler;
    j["betti"] = r.betti;
    nlohmann::ordered_json tor = nlohmann::ordered_json::array();
    for (auto& t : r.torsion) {
        if (!t) {
            tor.push_back(nullptr);
        } else {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (auto& s : *t) arr.push_back(s);
            tor.push_back(arr);
        }
    }
    j["torsion"] = std::move(tor);
    j["prime"] = r.prime;
    return j.dump(2);
}

} // namespace graphcfg
