#include <doctest.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "graphcfg/complex.hpp"
#include "graphcfg/invariants.hpp"
#include "graphcfg/verify.hpp"

using namespace graphcfg;

namespace {

struct KeyInfo {
    bool edge = false;
    uint32_t a = 0, b = 0;  // endpoints; a vertex repeats its own id
};

std::vector<KeyInfo> keys_of(const SubdividedGraph& s) {
    std::vector<KeyInfo> keys;
    for (uint32_t i = 0; i < s.graph.vertex_count(); ++i) keys.push_back({false, i, i});
    for (const auto& e : s.graph.edges()) keys.push_back({true, e.u, e.v});
    return keys;
}

bool closed_disjoint(const KeyInfo& x, const KeyInfo& y) {
    return x.a != y.a && x.a != y.b && x.b != y.a && x.b != y.b;
}

// Direct enumeration of ordered tuples of pairwise-disjoint closed cells,
// counted by edge-coordinate count. Independent of the builder's recursion.
std::vector<long long> brute_f(const SubdividedGraph& s, uint32_t n) {
    std::vector<KeyInfo> keys = keys_of(s);
    std::vector<long long> f;
    std::vector<uint32_t> tuple;
    std::function<void()> rec = [&]() {
        if (tuple.size() == n) {
            uint32_t d = 0;
            for (uint32_t k : tuple)
                if (keys[k].edge) ++d;
            if (f.size() <= d) f.resize(d + 1, 0);
            ++f[d];
            return;
        }
        for (uint32_t k = 0; k < keys.size(); ++k) {
            bool ok = true;
            for (uint32_t q : tuple) {
                if (!closed_disjoint(keys[k], keys[q])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                tuple.push_back(k);
                rec();
                tuple.pop_back();
            }
        }
    };
    rec();
    return f;
}

std::vector<long long> padded(std::vector<long long> v, size_t n) {
    v.resize(std::max(v.size(), n), 0);
    return v;
}

void check_f_against_brute(const std::string& fixture, uint32_t n, uint32_t factor) {
    SubdividedGraph s = subdivide(fixture_graph(fixture), factor);
    CubeComplex c = build_complex(s, n);
    std::vector<long long> got = c.f_vector();
    std::vector<long long> want = brute_f(s, n);
    size_t len = std::max(got.size(), want.size());
    CHECK(padded(got, len) == padded(want, len));
}

} // namespace

TEST_CASE("cell counts match direct tuple enumeration") {
    check_f_against_brute("y.graph", 2, 3);
    check_f_against_brute("y.graph", 3, 4);
    check_f_against_brute("q.graph", 2, 3);
    check_f_against_brute("circle.graph", 2, 3);
    check_f_against_brute("circle.graph", 3, 4);
    check_f_against_brute("star4.graph", 2, 3);
    check_f_against_brute("h.graph", 2, 3);
    check_f_against_brute("h.graph", 3, 2);
}

TEST_CASE("single edge with two tokens leaves only the two swaps") {
    Graph g = parse_graph("v a\nv b\ne e a b\n");
    CubeComplex c = build_complex(subdivide(g, 1), 2);
    CHECK(c.f_vector() == std::vector<long long>{2});
    CHECK(euler_characteristic(c) == 2);
    CHECK(connected_components(c) == 2);
}

TEST_CASE("one token reproduces the subdivided graph") {
    SubdividedGraph s = subdivide(fixture_graph("path5.graph"), 1);
    CubeComplex c = build_complex(s, 1);
    CHECK(c.f_vector() == std::vector<long long>{5, 4});
    CHECK(connected_components(c) == 1);
}

TEST_CASE("parallel and serial builders agree cell for cell") {
    for (auto [name, n, f] : {std::tuple<const char*, uint32_t, uint32_t>{"h.graph", 3, 2},
                              {"y.graph", 3, 4},
                              {"star4.graph", 2, 3}}) {
        SubdividedGraph s = subdivide(fixture_graph(name), f);
        CubeComplex a = build_complex(s, n);
        CubeComplex b = build_complex_serial(s, n);
        CHECK(a.cells == b.cells);
        CHECK(a.face_index == b.face_index);
        CHECK(a.face_sign == b.face_sign);
    }
}

TEST_CASE("every d-cell has exactly 2d distinct signed faces") {
    CubeComplex c = build_complex(subdivide(fixture_graph("y.graph"), 4), 3);
    for (uint32_t d = 1; d <= c.dim(); ++d) {
        SparseMatrix m = boundary_matrix(c, d);
        CHECK(m.rows == c.cell_count(d - 1));
        CHECK(m.cols == c.cell_count(d));
        for (const auto& col : m.col) {
            CHECK(col.size() == 2 * d);
            for (const auto& [row, coeff] : col) CHECK((coeff == 1 || coeff == -1));
        }
    }
}

TEST_CASE("boundary of boundary vanishes") {
    for (auto [name, n, f] : {std::tuple<const char*, uint32_t, uint32_t>{"y.graph", 3, 4},
                              {"h.graph", 3, 2},
                              {"q.graph", 3, 4}}) {
        CubeComplex c = build_complex(subdivide(fixture_graph(name), f), n);
        for (uint32_t d = 2; d <= c.dim(); ++d) {
            SparseMatrix up = boundary_matrix(c, d);
            SparseMatrix dn = boundary_matrix(c, d - 1);
            for (size_t j = 0; j < up.cols; ++j) {
                std::map<uint32_t, long long> acc;
                for (const auto& [mid, s1] : up.col[j]) {
                    for (const auto& [low, s2] : dn.col[mid]) acc[low] += (long long)s1 * s2;
                }
                for (const auto& [row, v] : acc) CHECK(v == 0);
            }
        }
    }
}

TEST_CASE("1-cell boundary signs follow the edge-coordinate convention") {
    // Single edge coordinate: the face at the smaller endpoint enters with
    // -1, the larger with +1.
    CubeComplex c = build_complex(subdivide(fixture_graph("y.graph"), 3), 2);
    SparseMatrix m = boundary_matrix(c, 1);
    for (size_t j = 0; j < m.cols; ++j) {
        REQUIRE(m.col[j].size() == 2);
        long long sum = 0;
        for (const auto& [row, coeff] : m.col[j]) sum += coeff;
        CHECK(sum == 0);

        std::span<const cell_key> keys = c.cell(1, j);
        uint32_t slot = c.key_is_edge(keys[0]) ? 0 : 1;
        const Edge& e = c.graph->graph.edge(keys[slot] - c.vkeys);
        uint32_t lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
        for (const auto& [row, coeff] : m.col[j]) {
            std::span<const cell_key> face = c.cell(0, row);
            CHECK(face[slot] == (coeff == -1 ? lo : hi));
        }
    }
}

TEST_CASE("find_cell inverts cell and key_name tags the key kind") {
    CubeComplex c = build_complex(subdivide(fixture_graph("q.graph"), 3), 2);
    for (uint32_t d = 0; d <= c.dim(); ++d) {
        for (size_t i = 0; i < c.cell_count(d); ++i) {
            CHECK(c.find_cell(d, c.cell(d, i)) == (long long)i);
        }
    }
    std::vector<cell_key> bogus{0, 0};
    CHECK(c.find_cell(0, bogus) == -1);
    CHECK(c.key_name(0).substr(0, 2) == "v:");
    CHECK(c.key_name(c.vkeys).substr(0, 2) == "e:");
}

TEST_CASE("cell cap raises resource_error before building") {
    BuildOptions opts;
    opts.cell_cap = 10;
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 3);
    CHECK_THROWS_AS(build_complex(s, 2, opts), resource_error);
}

TEST_CASE("construction preconditions are rejected loudly") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 2);
    CHECK_THROWS_AS(build_complex(s, 0), invalid_argument);
    SubdividedGraph raw;
    raw.graph = fixture_graph("q.graph");  // loop: not simple
    raw.factor = 1;
    raw.original_vertices = raw.graph.vertex_count();
    CHECK_THROWS_AS(build_complex(raw, 2), invalid_argument);
}

TEST_CASE("subcomplex selection must be closed under faces") {
    CubeComplex c = build_complex(subdivide(fixture_graph("y.graph"), 3), 2);
    CHECK_THROWS_AS(
        subcomplex(c, [](uint32_t d, std::span<const cell_key>) { return d == 1; }),
        invalid_argument);
    CubeComplex skel = subcomplex(c, [](uint32_t d, std::span<const cell_key>) { return d <= 0; });
    CHECK(skel.f_vector() == std::vector<long long>{90});
}

TEST_CASE("coordinate slice and closed-star complement at the branch vertex") {
    CubeComplex c = build_complex(subdivide(fixture_graph("y.graph"), 3), 2);
    CubeComplex slice = sigma_subcomplex(c, "c", 1);
    CHECK(connected_components(slice) == 3);
    CubeComplex comp = closed_star_complement(c, "c");
    CHECK(connected_components(comp) == 12);
    CHECK_THROWS_AS(sigma_subcomplex(c, "zz", 1), invalid_argument);
    CHECK_THROWS_AS(sigma_subcomplex(c, "c", 3), invalid_argument);
    CHECK_THROWS_AS(closed_star_complement(c, "zz"), invalid_argument);
}

TEST_CASE("json export carries the f-vector and optional cells") {
    CubeComplex c = build_complex(subdivide(fixture_graph("circle.graph"), 3), 2);
    std::string bare = complex_to_json(c, false);
    std::string full = complex_to_json(c, true);
    CHECK(bare.find("f_vector") != std::string::npos);
    CHECK(bare.find("\"cells\"") == std::string::npos);
    CHECK(full.find("\"cells\"") != std::string::npos);
}

TEST_CASE("dot export draws the 1-skeleton and refuses oversized complexes") {
    CubeComplex small = build_complex(subdivide(fixture_graph("circle.graph"), 3), 2);
    std::string dot = skeleton_to_dot(small);
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);

    CubeComplex big = build_complex(subdivide(fixture_graph("path5.graph"), 30), 2);
    REQUIRE(big.cell_count(0) > 10000);
    CHECK_THROWS_AS(skeleton_to_dot(big), resource_error);
}
