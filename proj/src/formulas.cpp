#include "graphcfg/formulas.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "graphcfg/complex.hpp"
#include "graphcfg/error.hpp"
#include "graphcfg/reduction.hpp"

namespace graphcfg {

namespace {

void validate(const RadialParams& p) {
    if (p.n < 1) throw invalid_argument("radial formulas need at least one token");
    if (p.k < 3) throw invalid_argument("radial formulas need at least three branches");
}

bigint factorial(uint32_t n) {
    bigint f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

// m! / (j_1! ... j_k!)
bigint multinomial(uint32_t m, const std::vector<uint32_t>& j) {
    bigint v = factorial(m);
    for (uint32_t ji : j) v /= factorial(ji);
    return v;
}

} // namespace

Graph radial_tree(uint32_t k) {
    if (k < 3) throw invalid_argument("a radial tree needs at least three branches");
    Graph g;
    g.add_vertex("c");
    for (uint32_t i = 1; i <= k; ++i) g.add_vertex("l" + std::to_string(i));
    for (uint32_t i = 1; i <= k; ++i) {
        g.add_edge("e" + std::to_string(i), "c", "l" + std::to_string(i));
    }
    return g;
}

bigint rank_Q(const RadialParams& p) {
    validate(p);
    bigint coeff = bigint(p.n) * p.k - 2 * bigint(p.n) - p.k + 1;
    return 1 + coeff * factorial(p.n + p.k - 2) / factorial(p.k - 1);
}

bigint euler_closed(const RadialParams& p) { return 1 - rank_Q(p); }

bigint count_E(const RadialParams& p) {
    validate(p);
    return factorial(p.n + p.k - 3) / factorial(p.k - 2);
}

bigint count_E_product(const RadialParams& p) {
    validate(p);
    bigint v = 1;
    for (uint32_t i = 1; i + 1 <= p.n; ++i) v *= p.k - 2 + i;
    return v;
}

namespace {

bigint euler_rec(uint32_t n, uint32_t k, std::map<std::pair<uint32_t, uint32_t>, bigint>& memo) {
    if (n == 1) return 1;     // one token: the tree itself, contractible
    if (k == 2) return factorial(n);  // a path: one contractible piece per ordering
    auto it = memo.find({n, k});
    if (it != memo.end()) return it->second;
    bigint v = euler_rec(n, k - 1, memo) +
               bigint(n) * (euler_rec(n - 1, k, memo) - count_E({n, k}));
    memo.emplace(std::pair{n, k}, v);
    return v;
}

} // namespace

bigint euler_recursive(const RadialParams& p) {
    validate(p);
    std::map<std::pair<uint32_t, uint32_t>, bigint> memo;
    return euler_rec(p.n, p.k, memo);
}

namespace {

void enum_rec(uint32_t n, uint32_t k, std::vector<uint32_t>& cur,
              std::vector<std::vector<uint32_t>>& out) {
    if (k == 1) {
        cur.push_back(n);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (uint32_t first = 0; first <= n; ++first) {
        cur.push_back(first);
        enum_rec(n - first, k - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<uint32_t>> enumerate_distributions(uint32_t n, uint32_t k) {
    std::vector<std::vector<uint32_t>> out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<uint32_t> cur;
    enum_rec(n, k, cur, out);
    return out;
}

namespace {

// Connected components of the subgraph of `g` induced by `keep`, each as its
// own Graph, ordered by smallest vertex index.
std::vector<Graph> split_components(const Graph& g) {
    uint32_t n = g.vertex_count();
    std::vector<int> comp(n, -1);
    auto adj = g.adjacency();
    int ncomp = 0;
    for (uint32_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<uint32_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            uint32_t v = stack.back();
            stack.pop_back();
            for (uint32_t w : adj[v]) {
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<Graph> pieces(ncomp);
    for (uint32_t v = 0; v < n; ++v) pieces[comp[v]].add_vertex(g.vertex_name(v));
    for (const auto& e : g.edges()) {
        pieces[comp[e.u]].add_edge(e.id, g.vertex_name(e.u), g.vertex_name(e.v));
    }
    return pieces;
}

// Components of the token complex a piece carries, built on the piece as-is
// (it already carries the ambient subdivision). Zero tokens give one point.
long long piece_components(const Graph& piece, uint32_t tokens) {
    if (tokens == 0) return 1;
    if (piece.vertex_count() < tokens) return 0;
    CubeComplex c = build_complex(subdivide(piece, 1), tokens);
    return connected_components(c);
}

} // namespace

SigmaReport verify_sigma_decomposition(const Graph& g, const std::string& p, uint32_t tokens,
                                       uint32_t factor) {
    if (!g.is_tree()) throw invalid_argument("sigma decomposition is stated for trees");
    auto pidx = g.vertex_index(p);
    if (!pidx) throw invalid_argument("no vertex named '" + p + "'");
    if (g.degree(*pidx) <= 2) {
        throw invalid_argument("'" + p + "' is not essential (degree <= 2)");
    }
    if (tokens < 1) throw invalid_argument("need at least one token");

    SigmaReport rep;
    rep.vertex = p;
    rep.tokens = tokens;
    rep.factor = factor;

    SubdividedGraph s = subdivide(g, factor);
    CubeComplex c = build_complex(s, tokens);

    for (uint32_t t = 1; t <= tokens; ++t) {
        rep.sigma_complex += connected_components(sigma_subcomplex(c, p, t));
    }
    rep.complement_complex = connected_components(closed_star_complement(c, p));

    uint32_t sp = *s.graph.vertex_index(p);
    std::vector<Graph> pieces = split_components(s.graph.without_vertex(sp));
    size_t m = pieces.size();

    // kappa[i][j]: components of j tokens on piece i.
    std::vector<std::vector<long long>> kappa(m, std::vector<long long>(tokens + 1, 0));
    for (size_t i = 0; i < m; ++i) {
        for (uint32_t j = 0; j <= tokens; ++j) kappa[i][j] = piece_components(pieces[i], j);
    }

    bigint sigma = 0;
    for (const auto& dist : enumerate_distributions(tokens - 1, static_cast<uint32_t>(m))) {
        bigint term = multinomial(tokens - 1, dist);
        for (size_t i = 0; i < m; ++i) term *= kappa[i][dist[i]];
        sigma += term;
    }
    sigma *= tokens;

    bigint compl_sum = 0;
    for (const auto& dist : enumerate_distributions(tokens, static_cast<uint32_t>(m))) {
        bigint term = multinomial(tokens, dist);
        for (size_t i = 0; i < m; ++i) term *= kappa[i][dist[i]];
        compl_sum += term;
    }

    rep.sigma_formula = sigma.convert_to<long long>();
    rep.complement_formula = compl_sum.convert_to<long long>();
    rep.pass = rep.sigma_complex == rep.sigma_formula &&
               rep.complement_complex == rep.complement_formula;
    return rep;
}

std::vector<FormulaRow> formula_table(uint32_t nmax, uint32_t kmax, uint64_t cell_budget) {
    if (nmax < 1 || kmax < 3) {
        throw invalid_argument("formula table needs nmax >= 1 and kmax >= 3");
    }
    std::vector<FormulaRow> rows;
    for (uint32_t n = 1; n <= nmax; ++n) {
        for (uint32_t k = 3; k <= kmax; ++k) {
            FormulaRow row;
            row.n = n;
            row.k = k;
            RadialParams p{n, k};
            row.e = count_E(p);
            row.chi_closed = euler_closed(p);
            row.chi_recursive = euler_recursive(p);
            row.q = rank_Q(p);
            try {
                BuildOptions opts;
                opts.cell_cap = cell_budget;
                CubeComplex c =
                    build_complex(subdivide(radial_tree(k), faithful_factor(n)), n, opts);
                std::vector<long long> betti = betti_numbers(collapse(c).residual);
                row.b1_complex = betti.size() > 1 ? betti[1] : 0;
            } catch (const resource_error&) {
                row.b1_complex = std::nullopt;  // over budget: formula columns only
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string table_to_text(const std::vector<FormulaRow>& rows) {
    std::vector<std::array<std::string, 7>> cells;
    cells.push_back({"N", "K", "E", "chi_closed", "chi_recursive", "Q", "b1_complex"});
    for (const auto& r : rows) {
        cells.push_back({std::to_string(r.n), std::to_string(r.k), r.e.str(),
                         r.chi_closed.str(), r.chi_recursive.str(), r.q.str(),
                         r.b1_complex ? std::to_string(*r.b1_complex) : "-"});
    }
    std::array<size_t, 7> width{};
    for (const auto& row : cells) {
        for (size_t i = 0; i < 7; ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream os;
    for (const auto& row : cells) {
        for (size_t i = 0; i < 7; ++i) {
            os << std::setw(static_cast<int>(width[i])) << row[i] << (i + 1 < 7 ? "  " : "");
        }
        os << "\n";
    }
    return os.str();
}

std::string table_to_csv(const std::vector<FormulaRow>& rows) {
    std::ostringstream os;
    os << "N,K,E,chi_closed,chi_recursive,Q,b1_complex\n";
    for (const auto& r : rows) {
        os << r.n << "," << r.k << "," << r.e << "," << r.chi_closed << ","
           << r.chi_recursive << "," << r.q << ","
           << (r.b1_complex ? std::to_string(*r.b1_complex) : "") << "\n";
    }
    return os.str();
}

} // namespace graphcfg
