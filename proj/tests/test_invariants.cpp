#include <doctest.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "graphcfg/invariants.hpp"
#include "graphcfg/reduction.hpp"
#include "graphcfg/verify.hpp"

using namespace graphcfg;

namespace {

SparseMatrix dense(const std::vector<std::vector<int32_t>>& m) {
    SparseMatrix s;
    s.rows = m.size();
    s.cols = m.empty() ? 0 : m[0].size();
    s.col.resize(s.cols);
    for (size_t r = 0; r < s.rows; ++r) {
        for (size_t c = 0; c < s.cols; ++c) {
            if (m[r][c] != 0) s.col[c].push_back({(uint32_t)r, m[r][c]});
        }
    }
    return s;
}

std::vector<long long> trimmed(std::vector<long long> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

std::vector<long long> full_betti(const std::string& fixture, uint32_t n, uint32_t factor) {
    CubeComplex c = build_complex(subdivide(fixture_graph(fixture), factor), n);
    return trimmed(betti_numbers(c));
}

} // namespace

TEST_CASE("field rank handles dependence, identity, and modular drop") {
    CHECK(gfp_rank(dense({{1, 2}, {2, 4}}), default_prime) == 1);
    CHECK(gfp_rank(dense({{0, 1}, {1, 0}}), default_prime) == 2);
    CHECK(gfp_rank(dense({{2}}), default_prime) == 1);
    CHECK(gfp_rank(dense({{2}}), 2) == 0);  // the drop the b_0 cross-check guards against
    CHECK(gfp_rank(dense({{0, 0}, {0, 0}}), default_prime) == 0);
    CHECK(gfp_rank(dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), default_prime) == 2);
}

TEST_CASE("Betti numbers of the reference complexes") {
    CHECK(full_betti("y.graph", 2, 3) == std::vector<long long>{1, 1});
    CHECK(full_betti("circle.graph", 2, 3) == std::vector<long long>{1, 1});
    CHECK(full_betti("q.graph", 2, 3) == std::vector<long long>{1, 3});
    CHECK(full_betti("h.graph", 2, 3) == std::vector<long long>{1, 3});
    CHECK(full_betti("star4.graph", 2, 3) == std::vector<long long>{1, 5});
    CHECK(full_betti("star5.graph", 2, 3) == std::vector<long long>{1, 11});
    CHECK(full_betti("y.graph", 3, 4) == std::vector<long long>{1, 13});
}

TEST_CASE("three tokens on a loop occupy two separate cycles") {
    // Two orientation classes, each a circle: b = (2, 2).
    CHECK(full_betti("circle.graph", 3, 4) == std::vector<long long>{2, 2});
}

TEST_CASE("bridge graph with three tokens, collapsed first") {
    CubeComplex c = build_complex(subdivide(fixture_graph("h.graph"), 4), 3);
    std::vector<long long> b = trimmed(betti_numbers(collapse(c).residual));
    CHECK(b == std::vector<long long>{1, 31});
}

TEST_CASE("b_0 always equals the union-find component count") {
    for (auto [name, n, f] : {std::tuple<const char*, uint32_t, uint32_t>{"y.graph", 2, 3},
                              {"q.graph", 3, 4},
                              {"circle.graph", 3, 4},
                              {"path5.graph", 2, 1}}) {
        CubeComplex c = build_complex(subdivide(fixture_graph(name), f), n);
        CHECK(betti_numbers(c)[0] == connected_components(c));
    }
}

TEST_CASE("euler characteristic equals both the f-vector and Betti alternating sums") {
    for (auto [name, n, f] : {std::tuple<const char*, uint32_t, uint32_t>{"y.graph", 3, 4},
                              {"h.graph", 2, 3},
                              {"q.graph", 3, 4}}) {
        CubeComplex c = build_complex(subdivide(fixture_graph(name), f), n);
        long long chi = euler_characteristic(c);
        long long from_b = 0;
        int sign = 1;
        for (long long b : betti_numbers(c)) {
            from_b += sign * b;
            sign = -sign;
        }
        CHECK(chi == from_b);
    }
}

TEST_CASE("Smith normal form on known integer matrices") {
    SmithResult r = smith_normal_form(dense({{2, 0}, {0, 3}}));
    CHECK(r.rank == 2);
    REQUIRE(r.torsion.size() == 1);
    CHECK(r.torsion[0] == 6);  // diag(2,3) ~ diag(1,6)

    r = smith_normal_form(dense({{4, 0}, {0, 6}}));
    CHECK(r.rank == 2);
    REQUIRE(r.torsion.size() == 2);
    CHECK(r.torsion[0] == 2);
    CHECK(r.torsion[1] == 12);

    r = smith_normal_form(dense({{2, 4}, {4, 8}}));
    CHECK(r.rank == 1);
    REQUIRE(r.torsion.size() == 1);
    CHECK(r.torsion[0] == 2);

    r = smith_normal_form(dense({{1, 0}, {0, 1}}));
    CHECK(r.rank == 2);
    CHECK(r.torsion.empty());

    r = smith_normal_form(dense({{2}, {0}}));
    CHECK(r.rank == 1);
    REQUIRE(r.torsion.size() == 1);
    CHECK(r.torsion[0] == 2);

    CHECK(smith_normal_form(dense({{0, 0}, {0, 0}})).rank == 0);
}

TEST_CASE("Smith column cap raises resource_error") {
    CHECK_THROWS_AS(smith_normal_form(dense({{1, 2}, {3, 4}}), 1), resource_error);
}

TEST_CASE("integral homology of the reference complexes is torsion-free") {
    CubeComplex c = build_complex(subdivide(fixture_graph("circle.graph"), 3), 2);
    IntegralHomology h1 = integral_homology(c, 1);
    CHECK(h1.rank == 1);
    CHECK(h1.torsion.empty());

    CubeComplex y3 = collapse(build_complex(subdivide(fixture_graph("y.graph"), 4), 3)).residual;
    IntegralHomology y3h1 = integral_homology(y3, 1);
    CHECK(y3h1.rank == 13);
    CHECK(y3h1.torsion.empty());
}

TEST_CASE("exact and modular ranks agree on the small complexes") {
    for (auto [name, n, f] : {std::tuple<const char*, uint32_t, uint32_t>{"y.graph", 2, 3},
                              {"q.graph", 2, 3},
                              {"circle.graph", 2, 4},
                              {"h.graph", 2, 3}}) {
        CubeComplex c = build_complex(subdivide(fixture_graph(name), f), n);
        CHECK(rational_ranks_agree(c));
    }
}

TEST_CASE("invariant report serializes the documented shape") {
    CubeComplex c = build_complex(subdivide(fixture_graph("y.graph"), 3), 2);
    InvariantReport rep = invariant_report(c);
    CHECK(rep.f_vector == std::vector<long long>{90, 144, 54});
    CHECK(rep.euler == 0);
    CHECK(trimmed(rep.betti) == std::vector<long long>{1, 1});
    REQUIRE(rep.torsion.size() == 3);
    for (const auto& t : rep.torsion) {
        REQUIRE(t.has_value());
        CHECK(t->empty());
    }

    auto j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["f_vector"] == std::vector<long long>{90, 144, 54});
    CHECK(j["euler"] == 0);
    CHECK(j["betti"][0] == 1);
    CHECK(j["betti"][1] == 1);
    CHECK(j["torsion"].is_array());
    CHECK(j["prime"] == default_prime);

    // The cap turns torsion entries into nulls, not wrong answers.
    InvariantReport capped = invariant_report(c, default_prime, true, 10);
    bool any_null = false;
    for (const auto& t : capped.torsion) any_null = any_null || !t.has_value();
    CHECK(any_null);
    auto jc = nlohmann::json::parse(report_to_json(capped));
    CHECK(jc["torsion"][1].is_null());
}
