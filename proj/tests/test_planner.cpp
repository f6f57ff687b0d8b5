#include <doctest.h>

#include <json.hpp>

#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "graphcfg/planner.hpp"
#include "graphcfg/verify.hpp"

using namespace graphcfg;

namespace {

using Tuple = std::vector<uint32_t>;

Tuple resolve(const Graph& g, const std::vector<std::string>& names) {
    Tuple t;
    for (const auto& n : names) t.push_back(*g.vertex_index(n));
    return t;
}

// Plain map-based BFS over explicit token tuples, sharing no code with the
// planner. Returns -1 when the goal is unreachable.
long long brute_length(const Graph& g, const Tuple& start, const Tuple& goal,
                       bool simultaneous) {
    auto adj = g.adjacency();
    size_t n = start.size();
    std::map<Tuple, long long> dist{{start, 0}};
    std::queue<Tuple> q;
    q.push(start);
    while (!q.empty()) {
        Tuple cur = q.front();
        q.pop();
        if (cur == goal) return dist[cur];
        long long d = dist[cur];
        std::vector<Tuple> succ;
        if (!simultaneous) {
            std::set<uint32_t> occ(cur.begin(), cur.end());
            for (size_t i = 0; i < n; ++i) {
                for (uint32_t w : adj[cur[i]]) {
                    if (occ.count(w)) continue;
                    Tuple next = cur;
                    next[i] = w;
                    succ.push_back(next);
                }
            }
        } else {
            // Any nonempty set of tokens may move at once when every target
            // avoids all pre-step positions and previously chosen targets;
            // that is exactly pairwise disjointness of the traversed closed
            // edges plus free landing vertices.
            std::set<uint32_t> pre(cur.begin(), cur.end());
            Tuple next = cur;
            std::set<uint32_t> chosen;
            std::function<void(size_t, bool)> rec = [&](size_t i, bool moved) {
                if (i == n) {
                    if (moved) succ.push_back(next);
                    return;
                }
                rec(i + 1, moved);  // token i stays
                for (uint32_t w : adj[cur[i]]) {
                    if (pre.count(w) || chosen.count(w)) continue;
                    next[i] = w;
                    chosen.insert(w);
                    rec(i + 1, true);
                    chosen.erase(w);
                    next[i] = cur[i];
                }
            };
            rec(0, false);
        }
        for (const Tuple& s : succ) {
            if (dist.emplace(s, d + 1).second) q.push(s);
        }
    }
    return -1;
}

// Step-by-step legality of a returned plan; sequential application is valid
// for simultaneous plans too because each target avoids every pre-step
// position.
void replay_plan(const SubdividedGraph& s, const std::vector<std::string>& start,
                 const std::vector<std::string>& goal, const Plan& p, bool simultaneous) {
    auto adj = s.graph.adjacency();
    Tuple pos = resolve(s.graph, start);
    for (const auto& m : p.moves) {
        REQUIRE(m.token >= 1);
        REQUIRE(m.token <= pos.size());
        uint32_t from = *s.graph.vertex_index(m.from);
        uint32_t to = *s.graph.vertex_index(m.to);
        REQUIRE(pos[m.token - 1] == from);
        bool adjacent = false;
        for (uint32_t w : adj[from]) adjacent = adjacent || w == to;
        REQUIRE(adjacent);
        for (uint32_t p2 : pos) REQUIRE(p2 != to);
        pos[m.token - 1] = to;
    }
    CHECK(pos == resolve(s.graph, goal));
    if (!simultaneous) CHECK(p.length == p.moves.size());
    CHECK(p.length <= p.moves.size());
}

std::vector<std::vector<std::string>> all_injective_pairs(const Graph& g) {
    std::vector<std::vector<std::string>> out;
    for (uint32_t a = 0; a < g.vertex_count(); ++a) {
        for (uint32_t b = 0; b < g.vertex_count(); ++b) {
            if (a != b) out.push_back({g.vertex_name(a), g.vertex_name(b)});
        }
    }
    return out;
}

} // namespace

TEST_CASE("both modes are optimal on every two-token instance of the spoke graph") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 1);
    auto tuples = all_injective_pairs(s.graph);
    for (const auto& a : tuples) {
        for (const auto& b : tuples) {
            long long want = brute_length(s.graph, resolve(s.graph, a), resolve(s.graph, b), false);
            for (PlanMode mode : {PlanMode::bfs, PlanMode::astar}) {
                PlanOptions opts;
                opts.mode = mode;
                PlanResult r = plan(s, a, b, opts);
                if (want < 0) {
                    CHECK(std::holds_alternative<Unreachable>(r));
                } else {
                    REQUIRE(std::holds_alternative<Plan>(r));
                    const Plan& p = std::get<Plan>(r);
                    CHECK((long long)p.length == want);
                    replay_plan(s, a, b, p, false);
                }
            }
        }
    }
}

TEST_CASE("simultaneous mode is optimal and honors closed-edge disjointness") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 1);
    auto tuples = all_injective_pairs(s.graph);
    PlanOptions opts;
    opts.simultaneous = true;
    for (const auto& a : tuples) {
        for (const auto& b : tuples) {
            long long want = brute_length(s.graph, resolve(s.graph, a), resolve(s.graph, b), true);
            PlanResult r = plan(s, a, b, opts);
            if (want < 0) {
                CHECK(std::holds_alternative<Unreachable>(r));
            } else {
                REQUIRE(std::holds_alternative<Plan>(r));
                const Plan& p = std::get<Plan>(r);
                CHECK((long long)p.length == want);
                replay_plan(s, a, b, p, true);
            }
        }
    }

    // Chasing along a path is two steps, not one: the traversed edges would
    // share the middle vertex.
    Graph path3 = parse_graph("v a\nv b\nv c\ne ab a b\ne bc b c\n");
    PlanResult r = plan(subdivide(path3, 1), {"a", "b"}, {"b", "c"}, opts);
    REQUIRE(std::holds_alternative<Plan>(r));
    CHECK(std::get<Plan>(r).length == 2);

    // Tokens in separate components move in the same step.
    Graph two = parse_graph("v a\nv b\nv c\nv d\ne ab a b\ne cd c d\n");
    PlanResult r2 = plan(subdivide(two, 1), {"a", "c"}, {"b", "d"}, opts);
    REQUIRE(std::holds_alternative<Plan>(r2));
    const Plan& p2 = std::get<Plan>(r2);
    CHECK(p2.length == 1);
    CHECK(p2.moves.size() == 2);
    CHECK(!p2.min_token_gap.has_value());  // never in one component
}

TEST_CASE("modes agree on a bigger instance") {
    SubdividedGraph s = subdivide(fixture_graph("star4.graph"), 2);
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> cases = {
        {{"l1", "l2"}, {"l2", "l1"}},
        {{"l1", "c"}, {"l3", "l4"}},
        {{"e1#1", "l4"}, {"l4", "e1#1"}},
    };
    for (const auto& [a, b] : cases) {
        long long want = brute_length(s.graph, resolve(s.graph, a), resolve(s.graph, b), false);
        REQUIRE(want >= 0);
        for (PlanMode mode : {PlanMode::bfs, PlanMode::astar}) {
            PlanOptions opts;
            opts.mode = mode;
            PlanResult r = plan(s, a, b, opts);
            REQUIRE(std::holds_alternative<Plan>(r));
            CHECK((long long)std::get<Plan>(r).length == want);
        }
    }
}

TEST_CASE("a single token travels at graph distance") {
    SubdividedGraph s = subdivide(fixture_graph("h.graph"), 2);
    for (PlanMode mode : {PlanMode::bfs, PlanMode::astar}) {
        PlanOptions opts;
        opts.mode = mode;
        PlanResult r = plan(s, {"l1"}, {"l4"}, opts);
        REQUIRE(std::holds_alternative<Plan>(r));
        const Plan& p = std::get<Plan>(r);
        CHECK(p.length == 6);
        CHECK(!p.min_token_gap.has_value());
    }
}

TEST_CASE("swapping two tokens on a path is unreachable with ordered components") {
    SubdividedGraph s = subdivide(fixture_graph("path5.graph"), 1);
    PlanResult r = plan(s, {"v0", "v4"}, {"v4", "v0"});
    REQUIRE(std::holds_alternative<Unreachable>(r));
    const auto& u = std::get<Unreachable>(r);
    CHECK(u.start_component == 0);
    CHECK(u.goal_component == 1);

    auto j = nlohmann::json::parse(plan_to_json(r));
    CHECK(j["reachable"] == false);
    CHECK(j["components"][0] == 0);
    CHECK(j["components"][1] == 1);
}

TEST_CASE("minimum token gap over the plan") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 1);
    PlanResult r = plan(s, {"l1", "l2"}, {"l2", "l1"});
    REQUIRE(std::holds_alternative<Plan>(r));
    const Plan& p = std::get<Plan>(r);
    REQUIRE(p.min_token_gap.has_value());
    CHECK(*p.min_token_gap == 1);  // the swap passes through adjacent placements
}

TEST_CASE("plan input validation") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 1);
    CHECK_THROWS_AS(plan(s, {"l1"}, {"l1", "l2"}), invalid_argument);
    CHECK_THROWS_AS(plan(s, {"l1", "l1"}, {"l2", "l3"}), invalid_argument);
    CHECK_THROWS_AS(plan(s, {"zz", "l1"}, {"l1", "l2"}), invalid_argument);
    CHECK_THROWS_AS(plan(s, {}, {}), invalid_argument);

    PlanOptions tiny;
    tiny.state_cap = 2;
    CHECK_THROWS_AS(plan(s, {"l1", "l2"}, {"l2", "l1"}, tiny), resource_error);
}

TEST_CASE("plan serialization carries moves and the gap") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 1);
    PlanResult r = plan(s, {"l1", "l2"}, {"l2", "l1"});
    auto j = nlohmann::json::parse(plan_to_json(r));
    CHECK(j["start"] == std::vector<std::string>{"l1", "l2"});
    CHECK(j["goal"] == std::vector<std::string>{"l2", "l1"});
    CHECK(j["mode"] == "bfs");
    CHECK(j["length"] == j["moves"].size());
    CHECK(j["min_token_gap"] == 1);
    for (const auto& m : j["moves"]) {
        CHECK(m.contains("token"));
        CHECK(m.contains("from"));
        CHECK(m.contains("to"));
    }
}

TEST_CASE("diameter of ordered pairs on a path") {
    SubdividedGraph s = subdivide(fixture_graph("path5.graph"), 1);
    DiameterResult r = diameter(s, 2);
    CHECK(r.states == 20);
    CHECK(r.component_states == 10);
    CHECK(r.diameter == 6);
    CHECK(r.from == std::vector<std::string>{"v0", "v1"});
    CHECK(r.to == std::vector<std::string>{"v3", "v4"});

    auto j = nlohmann::json::parse(diameter_to_json(r));
    CHECK(j["diameter"] == 6);
    CHECK(j["states"] == 20);
    CHECK(j["component_states"] == 10);

    DiameterResult one = diameter(s, 1);
    CHECK(one.diameter == 4);
    CHECK(one.from == std::vector<std::string>{"v0"});
    CHECK(one.to == std::vector<std::string>{"v4"});

    CHECK_THROWS_AS(diameter(s, 2, 5), resource_error);
}

TEST_CASE("stack reversal on the refined spoke graph") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 2);
    long long got = reversal_distance(s, 2);
    // Independent check: the prong with the lexicographically first tip (l1)
    // is [l1, e1#1]; reversing that stack is a plain state-graph BFS.
    long long want = brute_length(s.graph, resolve(s.graph, {"l1", "e1#1"}),
                                  resolve(s.graph, {"e1#1", "l1"}), false);
    REQUIRE(want >= 0);
    CHECK(got == want);

    CHECK_THROWS_AS(reversal_distance(subdivide(fixture_graph("h.graph"), 2), 2),
                    invalid_argument);
    CHECK_THROWS_AS(reversal_distance(subdivide(fixture_graph("circle.graph"), 4), 2),
                    invalid_argument);
    CHECK_THROWS_AS(reversal_distance(subdivide(fixture_graph("path5.graph"), 1), 2),
                    invalid_argument);
    // Three tokens do not fit on a two-vertex prong.
    CHECK_THROWS_AS(reversal_distance(s, 3), invalid_argument);
}

TEST_CASE("interchange cost on the three-spoke star with three tokens") {
    SubdividedGraph s = subdivide(fixture_graph("y.graph"), 4);
    CHECK(reversal_distance(s, 3) == 28);
    DiameterResult d = diameter(s, 3);
    CHECK(d.diameter == 28);
    CHECK(d.states == 1716);
    CHECK(d.component_states == 1716);
}
