#include "graphcfg/verify.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphcfg/complex.hpp"
#include "graphcfg/error.hpp"
#include "graphcfg/formulas.hpp"
#include "graphcfg/invariants.hpp"
#include "graphcfg/planner.hpp"
#include "graphcfg/reduction.hpp"

namespace graphcfg {

const std::map<std::string, std::string>& embedded_fixtures() {
    static const std::map<std::string, std::string> fixtures = {
        {"y.graph",
         "# three spokes joined at a center\n"
         "v c\n"
         "v l1\n"
         "v l2\n"
         "v l3\n"
         "e e1 c l1\n"
         "e e2 c l2\n"
         "e e3 c l3\n"},
        {"h.graph",
         "# two degree-3 junctions joined by a bridge\n"
         "v c1\n"
         "v c2\n"
         "v l1\n"
         "v l2\n"
         "v l3\n"
         "v l4\n"
         "e eb c1 c2\n"
         "e e1 c1 l1\n"
         "e e2 c1 l2\n"
         "e e3 c2 l3\n"
         "e e4 c2 l4\n"},
        {"q.graph",
         "# a loop with a tail\n"
         "v c\n"
         "v l\n"
         "e loop c c\n"
         "e tail c l\n"},
        {"circle.graph",
         "# one vertex, one loop\n"
         "v c\n"
         "e loop c c\n"},
        {"star4.graph",
         "v c\n"
         "v l1\n"
         "v l2\n"
         "v l3\n"
         "v l4\n"
         "e e1 c l1\n"
         "e e2 c l2\n"
         "e e3 c l3\n"
         "e e4 c l4\n"},
        {"star5.graph",
         "v c\n"
         "v l1\n"
         "v l2\n"
         "v l3\n"
         "v l4\n"
         "v l5\n"
         "e e1 c l1\n"
         "e e2 c l2\n"
         "e e3 c l3\n"
         "e e4 c l4\n"
         "e e5 c l5\n"},
        {"path5.graph",
         "v v0\n"
         "v v1\n"
         "v v2\n"
         "v v3\n"
         "v v4\n"
         "e e1 v0 v1\n"
         "e e2 v1 v2\n"
         "e e3 v2 v3\n"
         "e e4 v3 v4\n"},
        {"y.json",
         "{\"vertices\": [\"c\", \"l1\", \"l2\", \"l3\"], \"edges\": [{\"id\": \"e1\", \"ends\": "
         "[\"c\", \"l1\"]}, {\"id\": \"e2\", \"ends\": [\"c\", \"l2\"]}, {\"id\": \"e3\", "
         "\"ends\": [\"c\", \"l3\"]}]}\n"},
    };
    return fixtures;
}

Graph fixture_graph(const std::string& name, const std::optional<std::string>& dir) {
    if (dir) return load_graph(*dir + "/" + name);
    auto it = embedded_fixtures().find(name);
    if (it == embedded_fixtures().end()) {
        throw invalid_argument("unknown fixture '" + name + "'");
    }
    if (name.size() >= 5 && name.substr(name.size() - 5) == ".json") {
        return parse_graph_json(it->second);
    }
    return parse_graph(it->second);
}

namespace {

std::string vec_str(const std::vector<long long>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
}

std::vector<long long> trimmed(std::vector<long long> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

struct Harness {
    const VerifyOptions& opts;
    VerifyResult result;

    bool wants(const std::string& name, const std::string& group) const {
        if (opts.filter.empty()) return true;
        return name.find(opts.filter) != std::string::npos ||
               group.find(opts.filter) != std::string::npos;
    }

    void add(const std::string& name, const std::string& group, const std::string& provenance,
             const std::function<void(Check&)>& fn) {
        if (!wants(name, group)) return;
        Check c;
        c.name = name;
        c.group = group;
        c.provenance = provenance;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception& ex) {
            c.pass = false;
            c.computed = std::string("error: ") + ex.what();
        }
        c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
        result.all_pass = result.all_pass && c.pass;
        result.checks.push_back(std::move(c));
    }
};

/// The default pipeline: build at the given refinement, collapse, then read
// Betti numbers off the residual.
std::vector<long long> pipeline_betti(const Graph& g, uint32_t tokens, uint32_t factor) {
    CubeComplex c = build_complex(subdivide(g, factor), tokens);
    return betti_numbers(collapse(c).residual);
}

long long pipeline_b(const Graph& g, uint32_t tokens, uint32_t factor, size_t d) {
    std::vector<long long> b = pipeline_betti(g, tokens, factor);
    return d < b.size() ? b[d] : 0;
}

bool composites_vanish(const CubeComplex& c) {
    for (uint32_t d = 2; d <= c.dim(); ++d) {
        SparseMatrix hi = boundary_matrix(c, d);
        SparseMatrix lo = boundary_matrix(c, d - 1);
        for (size_t col = 0; col < hi.cols; ++col) {
            std::map<uint32_t, long long> acc;
            for (auto [f, s] : hi.col[col]) {
                for (auto [f2, s2] : lo.col[f]) acc[f2] += static_cast<long long>(s) * s2;
            }
            for (auto& [row, v] : acc) {
                (void)row;
                if (v != 0) return false;
            }
        }
    }
    return true;
}

std::vector<long long> graph_distances(const Graph& g, uint32_t src) {
    auto adj = g.adjacency();
    std::vector<long long> dist(adj.size(), -1);
    std::deque<uint32_t> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        for (uint32_t w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

// Deterministic random planner instance: a random tree on 4..9 vertices plus
// up to two chords, with 1..3 tokens.
struct RandomInstance {
    Graph g;
    std::vector<std::string> start;
    std::vector<std::string> goal;
};

RandomInstance random_instance(uint64_t seed) {
    std::mt19937_64 rng(seed);
    RandomInstance inst;
    uint32_t v = 4 + static_cast<uint32_t>(rng() % 6);
    for (uint32_t i = 0; i < v; ++i) inst.g.add_vertex("v" + std::to_string(i));
    std::set<std::pair<uint32_t, uint32_t>> present;
    for (uint32_t i = 1; i < v; ++i) {
        uint32_t p = static_cast<uint32_t>(rng() % i);
        inst.g.add_edge("t" + std::to_string(i), "v" + std::to_string(p), "v" + std::to_string(i));
        present.insert({p, i});
    }
    uint32_t extra = static_cast<uint32_t>(rng() % 3);
    for (uint32_t k = 0; k < 2 * extra; ++k) {
        uint32_t a = static_cast<uint32_t>(rng() % v);
        uint32_t b = static_cast<uint32_t>(rng() % v);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!present.insert({a, b}).second) continue;
        inst.g.add_edge("x" + std::to_string(k), "v" + std::to_string(a),
                        "v" + std::to_string(b));
    }
    uint32_t n = 1 + static_cast<uint32_t>(rng() % 3);
    auto draw_tuple = [&]() {
        std::vector<std::string> tuple;
        std::set<uint32_t> used;
        while (tuple.size() < n) {
            uint32_t x = static_cast<uint32_t>(rng() % v);
            if (used.insert(x).second) tuple.push_back("v" + std::to_string(x));
        }
        return tuple;
    };
    inst.start = draw_tuple();
    inst.goal = draw_tuple();
    return inst;
}

void register_radial(Harness& h) {
    h.add("radial-grid-consistency", "radial", "paper", [](Check& c) {
        c.expected = "N=1..6, K=3..7: recursion matches closed form, both edge-count routes agree";
        std::vector<std::string> bad;
        for (uint32_t n = 1; n <= 6; ++n) {
            for (uint32_t k = 3; k <= 7; ++k) {
                RadialParams p{n, k};
                if (euler_recursive(p) != euler_closed(p)) {
                    bad.push_back("chi(" + std::to_string(n) + "," + std::to_string(k) + ")");
                }
                if (count_E(p) != count_E_product(p)) {
                    bad.push_back("E(" + std::to_string(n) + "," + std::to_string(k) + ")");
                }
            }
        }
        if (bad.empty()) {
            c.computed = "all 30 grid points agree on both routes";
            c.pass = true;
        } else {
            std::ostringstream os;
            os << "mismatches:";
            for (auto& b : bad) os << " " << b;
            c.computed = os.str();
        }
    });
}

void register_formula_vs_complex(Harness& h) {
    struct Case {
        uint32_t n, k;
        long long q;
    };
    for (Case cs : {Case{2, 3, 1}, Case{3, 3, 13}, Case{2, 4, 5}, Case{2, 5, 11},
                    Case{3, 4, 61}}) {
        std::string name =
            "star-b1-n" + std::to_string(cs.n) + "-k" + std::to_string(cs.k);
        h.add(name, "formula-vs-complex", "paper", [cs](Check& c) {
            c.expected = "b_1 = " + std::to_string(cs.q) + " = Q(" + std::to_string(cs.n) + "," +
                         std::to_string(cs.k) + ")";
            bigint q = rank_Q({cs.n, cs.k});
            long long b1 = pipeline_b(radial_tree(cs.k), cs.n, faithful_factor(cs.n), 1);
            c.computed = "b_1 = " + std::to_string(b1) + ", Q = " + q.str();
            c.pass = q == cs.q && b1 == cs.q;
        });
    }
}

void register_fixture_table(Harness& h) {
    h.add("y-n2-euler", "fixture-table", "paper", [&](Check& c) {
        c.expected = "chi = 0";
        CubeComplex cx = build_complex(subdivide(fixture_graph("y.graph", h.opts.fixtures_dir), 3), 2);
        long long chi = euler_characteristic(cx);
        c.computed = "chi = " + std::to_string(chi);
        c.pass = chi == 0;
    });
    struct BettiCase {
        const char* name;
        const char* fixture;
        uint32_t n, factor;
        std::vector<long long> betti;
    };
    std::vector<BettiCase> cases = {
        {"y-n2-betti", "y.graph", 2, 3, {1, 1}},
        {"circle-n2-betti", "circle.graph", 2, 3, {1, 1}},
        {"circle-n3-betti", "circle.graph", 3, 4, {1, 1}},
    };
    for (auto& bc : cases) {
        h.add(bc.name, "fixture-table", "paper", [&h, bc](Check& c) {
            c.expected = "betti = " + vec_str(bc.betti);
            std::vector<long long> b =
                pipeline_betti(fixture_graph(bc.fixture, h.opts.fixtures_dir), bc.n, bc.factor);
            c.computed = "betti = " + vec_str(b);
            c.pass = trimmed(b) == trimmed(bc.betti);
        });
    }
    struct B1Case {
        const char* name;
        const char* fixture;
        uint32_t n, factor;
        long long b1;
    };
    std::vector<B1Case> b1cases = {
        {"y-n3-b1", "y.graph", 3, 4, 13},
        {"h-n2-b1", "h.graph", 2, 3, 3},
        {"h-n3-b1", "h.graph", 3, 4, 25},
        {"q-n2-b1", "q.graph", 2, 3, 3},
    };
    for (auto& bc : b1cases) {
        h.add(bc.name, "fixture-table", "paper", [&h, bc](Check& c) {
            c.expected = "b_1 = " + std::to_string(bc.b1);
            long long b1 =
                pipeline_b(fixture_graph(bc.fixture, h.opts.fixtures_dir), bc.n, bc.factor, 1);
            c.computed = "b_1 = " + std::to_string(b1);
            c.pass = b1 == bc.b1;
        });
    }
}

void register_h4(Harness& h) {
    h.add("h-n4-b1", "h4", "paper", [&](Check& c) {
        c.expected = "b_1 = 207";
        long long b1 = pipeline_b(fixture_graph("h.graph", h.opts.fixtures_dir), 4, 3, 1);
        c.computed = "b_1 = " + std::to_string(b1);
        c.pass = b1 == 207;
    });
    h.add("h-n4-b2", "h4", "paper", [&](Check& c) {
        c.expected = "b_2 = 6";
        long long b2 = pipeline_b(fixture_graph("h.graph", h.opts.fixtures_dir), 4, 3, 2);
        c.computed = "b_2 = " + std::to_string(b2);
        c.pass = b2 == 6;
    });
    if (h.opts.deep) {
        h.add("h-n4-factor4-stability", "h4", "derived", [&](Check& c) {
            c.expected = "betti at refinement 4 equals betti at refinement 3";
            Graph g = fixture_graph("h.graph", h.opts.fixtures_dir);
            std::vector<long long> b3 = pipeline_betti(g, 4, 3);
            std::vector<long long> b4 = pipeline_betti(g, 4, 4);
            c.computed = "factor 3: " + vec_str(b3) + ", factor 4: " + vec_str(b4);
            c.pass = trimmed(b3) == trimmed(b4);
        });
    }
}

void register_dimension(Harness& h) {
    struct DimCase {
        const char* fixture;
        uint32_t n, factor;
    };
    for (DimCase dc : {DimCase{"y.graph", 2, 3}, DimCase{"y.graph", 3, 4},
                       DimCase{"h.graph", 2, 3}, DimCase{"h.graph", 3, 4},
                       DimCase{"q.graph", 2, 3}, DimCase{"q.graph", 3, 4},
                       DimCase{"star4.graph", 2, 3}, DimCase{"star4.graph", 3, 4},
                       DimCase{"star5.graph", 2, 3}, DimCase{"circle.graph", 2, 3},
                       DimCase{"circle.graph", 3, 4}}) {
        std::string base = dc.fixture;
        base = base.substr(0, base.find('.'));
        std::string name = "dim-" + base + "-n" + std::to_string(dc.n);
        h.add(name, "dimension", "paper", [&h, dc](Check& c) {
            Graph g = fixture_graph(dc.fixture, h.opts.fixtures_dir);
            DimensionReport r = dimension_report(g, dc.n, dc.factor);
            if (r.circle) {
                c.expected = "cycle graph: residual dimension 1 despite zero essential vertices";
                c.computed = "essential " + std::to_string(r.essential) + ", dim " +
                             std::to_string(r.dim_before) + " -> " + std::to_string(r.dim_after);
                c.pass = !r.violation && r.dim_after == 1;
            } else {
                c.expected =
                    "residual dimension <= " + std::to_string(r.essential) + " essential vertices";
                c.computed = "essential " + std::to_string(r.essential) + ", dim " +
                             std::to_string(r.dim_before) + " -> " + std::to_string(r.dim_after);
                c.pass = !r.violation;
            }
        });
    }
}

void register_structural(Harness& h) {
    h.add("dd-zero-all", "structural", "trivial", [&](Check& c) {
        c.expected = "boundary composites vanish on every fixture at 2 and 3 tokens";
        std::vector<std::string> bad;
        for (const char* name : {"y.graph", "h.graph", "q.graph", "circle.graph", "star4.graph",
                                 "star5.graph", "path5.graph"}) {
            Graph g = fixture_graph(name, h.opts.fixtures_dir);
            for (uint32_t n : {2u, 3u}) {
                CubeComplex cx = build_complex(subdivide(g, n + 1), n);
                if (!composites_vanish(cx)) {
                    bad.push_back(std::string(name) + " n=" + std::to_string(n));
                }
            }
        }
        c.computed = bad.empty() ? "all 14 complexes: boundary of boundary is zero"
                                 : "nonzero composite on: " + bad[0];
        c.pass = bad.empty();
    });
    h.add("collapse-invariance", "structural", "derived", [&](Check& c) {
        c.expected = "Betti numbers unchanged by collapse on five fixture complexes";
        struct Case {
            const char* fixture;
            uint32_t n, factor;
        };
        std::vector<std::string> bad;
        for (Case cs : {Case{"y.graph", 2, 3}, Case{"h.graph", 2, 3}, Case{"q.graph", 2, 3},
                        Case{"circle.graph", 2, 4}, Case{"y.graph", 3, 4}}) {
            CubeComplex cx =
                build_complex(subdivide(fixture_graph(cs.fixture, h.opts.fixtures_dir), cs.factor),
                              cs.n);
            std::vector<long long> full = betti_numbers(cx);
            std::vector<long long> reduced = betti_numbers(collapse(cx).residual);
            if (trimmed(full) != trimmed(reduced)) {
                bad.push_back(std::string(cs.fixture) + " n=" + std::to_string(cs.n) + ": " +
                              vec_str(full) + " vs " + vec_str(reduced));
            }
        }
        c.computed = bad.empty() ? "all five agree before and after collapse" : bad[0];
        c.pass = bad.empty();
    });
    h.add("subdivision-stability", "structural", "derived", [&](Check& c) {
        c.expected = "Betti numbers stable across refinements N+1..N+3";
        struct Case {
            const char* fixture;
            uint32_t n;
        };
        std::vector<std::string> bad;
        for (Case cs : {Case{"y.graph", 2}, Case{"h.graph", 2}, Case{"q.graph", 2},
                        Case{"circle.graph", 2}, Case{"y.graph", 3}}) {
            Graph g = fixture_graph(cs.fixture, h.opts.fixtures_dir);
            std::vector<long long> base = trimmed(pipeline_betti(g, cs.n, cs.n + 1));
            for (uint32_t f = cs.n + 2; f <= cs.n + 3; ++f) {
                std::vector<long long> b = trimmed(pipeline_betti(g, cs.n, f));
                if (b != base) {
                    bad.push_back(std::string(cs.fixture) + " n=" + std::to_string(cs.n) +
                                  " factor " + std::to_string(f));
                }
            }
        }
        c.computed = bad.empty() ? "five complexes stable across three refinements" : bad[0];
        c.pass = bad.empty();
    });
    h.add("sigma-y-n2", "structural", "paper", [&](Check& c) {
        c.expected = "sigma components 6, complement components 12, matching the formula";
        SigmaReport r =
            verify_sigma_decomposition(fixture_graph("y.graph", h.opts.fixtures_dir), "c", 2, 3);
        c.computed = "sigma " + std::to_string(r.sigma_complex) + "/" +
                     std::to_string(r.sigma_formula) + ", complement " +
                     std::to_string(r.complement_complex) + "/" +
                     std::to_string(r.complement_formula);
        c.pass = r.pass && r.sigma_complex == 6 && r.complement_complex == 12;
    });
    h.add("sigma-y-n3", "structural", "paper", [&](Check& c) {
        c.expected = "sigma components 36, complement components 60, matching the formula";
        SigmaReport r =
            verify_sigma_decomposition(fixture_graph("y.graph", h.opts.fixtures_dir), "c", 3, 4);
        c.computed = "sigma " + std::to_string(r.sigma_complex) + "/" +
                     std::to_string(r.sigma_formula) + ", complement " +
                     std::to_string(r.complement_complex) + "/" +
                     std::to_string(r.complement_formula);
        c.pass = r.pass && r.sigma_complex == 36 && r.complement_complex == 60;
    });
}

void register_torsion(Harness& h) {
    h.add("torsion-free-h1", "torsion", "paper", [&](Check& c) {
        c.expected = "no invariant factors in H_1 on any fixture complex";
        struct Case {
            const char* fixture;
            uint32_t n, factor;
            bool collapse_first;
        };
        std::vector<std::string> bad;
        int count = 0;
        for (Case cs : {Case{"y.graph", 2, 3, false}, Case{"q.graph", 2, 3, false},
                        Case{"circle.graph", 2, 3, false}, Case{"h.graph", 2, 3, false},
                        Case{"y.graph", 3, 4, false}, Case{"h.graph", 3, 4, true},
                        Case{"h.graph", 4, 3, true}}) {
            CubeComplex cx =
                build_complex(subdivide(fixture_graph(cs.fixture, h.opts.fixtures_dir), cs.factor),
                              cs.n);
            IntegralHomology h1 = cs.collapse_first ? integral_homology(collapse(cx).residual, 1)
                                                    : integral_homology(cx, 1);
            ++count;
            if (!h1.torsion.empty()) {
                bad.push_back(std::string(cs.fixture) + " n=" + std::to_string(cs.n));
            }
        }
        c.computed = bad.empty()
                         ? "H_1 torsion-free across " + std::to_string(count) + " complexes"
                         : "torsion in: " + bad[0];
        c.pass = bad.empty();
    });
    h.add("rational-rank-agreement", "torsion", "trivial", [&](Check& c) {
        c.expected = "exact boundary ranks equal GF(p) ranks";
        struct Case {
            const char* fixture;
            uint32_t n, factor;
        };
        std::vector<std::string> bad;
        for (Case cs : {Case{"y.graph", 2, 3}, Case{"q.graph", 2, 3}, Case{"circle.graph", 2, 4},
                        Case{"h.graph", 2, 3}}) {
            CubeComplex cx =
                build_complex(subdivide(fixture_graph(cs.fixture, h.opts.fixtures_dir), cs.factor),
                              cs.n);
            if (!rational_ranks_agree(cx)) {
                bad.push_back(std::string(cs.fixture) + " n=" + std::to_string(cs.n));
            }
        }
        c.computed = bad.empty() ? "ranks agree on all four complexes" : "disagreement: " + bad[0];
        c.pass = bad.empty();
    });
}

void register_planner(Harness& h) {
    h.add("astar-equals-bfs-random", "planner", "derived", [](Check& c) {
        c.expected = "both search modes agree on 100 seeded random instances";
        int reachable = 0, unreachable = 0;
        for (uint64_t i = 0; i < 100; ++i) {
            RandomInstance inst = random_instance(1234500 + i);
            SubdividedGraph s = subdivide(inst.g, 1);
            PlanOptions bfs_opts;
            PlanOptions astar_opts;
            astar_opts.mode = PlanMode::astar;
            PlanResult a = plan(s, inst.start, inst.goal, bfs_opts);
            PlanResult b = plan(s, inst.start, inst.goal, astar_opts);
            if (std::holds_alternative<Plan>(a) != std::holds_alternative<Plan>(b)) {
                c.computed = "instance " + std::to_string(i) + ": reachability disagrees";
                return;
            }
            if (std::holds_alternative<Plan>(a)) {
                ++reachable;
                if (std::get<Plan>(a).length != std::get<Plan>(b).length) {
                    c.computed = "instance " + std::to_string(i) + ": lengths " +
                                 std::to_string(std::get<Plan>(a).length) + " vs " +
                                 std::to_string(std::get<Plan>(b).length);
                    return;
                }
            } else {
                ++unreachable;
                const auto& ua = std::get<Unreachable>(a);
                const auto& ub = std::get<Unreachable>(b);
                if (ua.start_component != ub.start_component ||
                    ua.goal_component != ub.goal_component) {
                    c.computed = "instance " + std::to_string(i) + ": component ids disagree";
                    return;
                }
            }
        }
        c.computed = "100 instances agree (" + std::to_string(reachable) + " reachable, " +
                     std::to_string(unreachable) + " unreachable)";
        c.pass = true;
    });
    h.add("path-swap-unreachable", "planner", "trivial", [&](Check& c) {
        c.expected = "two tokens cannot swap on a path: unreachable, components 0 and 1";
        SubdividedGraph s = subdivide(fixture_graph("path5.graph", h.opts.fixtures_dir), 1);
        PlanResult r = plan(s, {"v0", "v4"}, {"v4", "v0"}, {});
        if (std::holds_alternative<Plan>(r)) {
            c.computed = "a plan of length " + std::to_string(std::get<Plan>(r).length) +
                         " was found";
            return;
        }
        const auto& u = std::get<Unreachable>(r);
        c.computed = "unreachable, components " + std::to_string(u.start_component) + " and " +
                     std::to_string(u.goal_component);
        c.pass = u.start_component == 0 && u.goal_component == 1;
    });
    h.add("n1-plan-equals-graph-distance", "planner", "trivial", [&](Check& c) {
        SubdividedGraph s = subdivide(fixture_graph("h.graph", h.opts.fixtures_dir), 2);
        long long want = graph_distances(s.graph, *s.graph.vertex_index("l1"))
            [*s.graph.vertex_index("l4")];
        c.expected = "single-token plan length equals graph distance " + std::to_string(want) +
                     " in both modes";
        PlanOptions astar_opts;
        astar_opts.mode = PlanMode::astar;
        PlanResult a = plan(s, {"l1"}, {"l4"}, {});
        PlanResult b = plan(s, {"l1"}, {"l4"}, astar_opts);
        if (!std::holds_alternative<Plan>(a) || !std::holds_alternative<Plan>(b)) {
            c.computed = "unreachable";
            return;
        }
        size_t la = std::get<Plan>(a).length, lb = std::get<Plan>(b).length;
        c.computed = "bfs " + std::to_string(la) + ", astar " + std::to_string(lb);
        c.pass = static_cast<long long>(la) == want && static_cast<long long>(lb) == want;
    });
    h.add("reversal-k3-n3", "planner", "derived", [&](Check& c) {
        c.expected = "reversing three stacked tokens on a three-spoke star costs 28 moves";
        long long d =
            reversal_distance(subdivide(fixture_graph("y.graph", h.opts.fixtures_dir), 4), 3);
        c.computed = "reversal distance " + std::to_string(d);
        c.pass = d == 28;
    });
    h.add("diameter-k3-n3", "planner", "derived", [&](Check& c) {
        c.expected = "state diameter 28 over a single component of 1716 states";
        DiameterResult d = diameter(subdivide(fixture_graph("y.graph", h.opts.fixtures_dir), 4), 3);
        c.computed = "diameter " + std::to_string(d.diameter) + ", component " +
                     std::to_string(d.component_states) + " of " + std::to_string(d.states) +
                     " states";
        c.pass = d.diameter == 28 && d.component_states == 1716 && d.states == 1716;
    });
    h.add("reversal-le-diameter", "planner", "trivial", [&](Check& c) {
        c.expected = "reversal distance bounded by the state diameter";
        SubdividedGraph s = subdivide(fixture_graph("y.graph", h.opts.fixtures_dir), 4);
        long long rev = reversal_distance(s, 3);
        long long diam = diameter(s, 3).diameter;
        c.computed = "reversal " + std::to_string(rev) + " <= diameter " + std::to_string(diam);
        c.pass = rev <= diam;
    });
}

} // namespace

VerifyResult run_verify(const VerifyOptions& opts) {
    Harness h{opts, {}};
    register_radial(h);
    register_formula_vs_complex(h);
    register_fixture_table(h);
    register_h4(h);
    register_dimension(h);
    register_structural(h);
    register_torsion(h);
    register_planner(h);
    return std::move(h.result);
}

std::string verify_to_json(const VerifyResult& r, bool stable) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["group"] = c.group;
        jc["provenance"] = c.provenance;
        jc["expected"] = c.expected;
        jc["computed"] = c.computed;
        jc["pass"] = c.pass;
        if (!stable) jc["ms"] = c.ms;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    j["all_pass"] = r.all_pass;
    return j.dump(2);
}

std::string verify_to_table(const VerifyResult& r) {
    size_t name_w = 4, group_w = 5;
    for (const auto& c : r.checks) {
        name_w = std::max(name_w, c.name.size());
        group_w = std::max(group_w, c.group.size());
    }
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name
           << std::string(name_w - c.name.size() + 2, ' ') << c.group
           << std::string(group_w - c.group.size() + 2, ' ') << "[" << c.provenance
           << "] expected: " << c.expected << " | computed: " << c.computed << "\n";
    }
    os << (r.all_pass ? "all checks passed" : "some checks FAILED") << " ("
       << r.checks.size() << " run)\n";
    return os.str();
}

} // namespace graphcfg
