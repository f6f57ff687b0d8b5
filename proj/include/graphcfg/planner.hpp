#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "graphcfg/graph.hpp"

namespace graphcfg {

enum class PlanMode { bfs, astar };

struct Move {
    uint32_t token = 0;  // 1-based, matching the rest of the token indexing
    std::string from;
    std::string to;
};

struct Plan {
    std::vector<std::string> start;
    std::vector<std::string> goal;
    std::vector<Move> moves;
    size_t length = 0;
    PlanMode mode = PlanMode::bfs;
    uint64_t expanded = 0;
    // Minimum over plan states and token pairs of the graph distance between
    // two tokens; null for a single token (and when no pair is ever in the
    // same component).
    std::optional<long long> min_token_gap;
};

// Start and goal lie in different components of the state graph. Component
// ids number the components by first appearance in the lexicographic scan of
// all states, starting at 0.
struct Unreachable {
    uint64_t start_component = 0;
    uint64_t goal_component = 0;
};

using PlanResult = std::variant<Plan, Unreachable>;

struct PlanOptions {
    PlanMode mode = PlanMode::bfs;
    // One token per step by default; the extension moves any set of tokens
    // whose traversed edges are pairwise disjoint and land on free vertices.
    bool simultaneous = false;
    uint64_t state_cap = 10000000ULL;
};

// Shortest collision-free move sequence between two token placements on the
// vertices of g. Both modes are exact; the A* heuristic (sum of per-token
// graph distances, averaged over the fleet in simultaneous mode) is
// consistent. Single-threaded per query by contract; independent queries may
// run concurrently.
PlanResult plan(const SubdividedGraph& g, const std::vector<std::string>& start,
                const std::vector<std::string>& goal, const PlanOptions& opts = {});

struct DiameterResult {
    long long diameter = 0;
    std::vector<std::string> from;
    std::vector<std::string> to;
    uint64_t states = 0;            // full state count
    uint64_t component_states = 0;  // largest component, where the sweep runs
};
// Exact diameter of the largest state-graph component by a breadth-first
// sweep from every state in it. Sweeps may run in parallel; the witness
// reduction (longest distance, ties to lexicographically first source then
// target) is order-free, so results are worker-count independent.
DiameterResult diameter(const SubdividedGraph& g, uint32_t tokens,
                        uint64_t state_cap = 10000000ULL);

// Tokens 1..n stacked outward-in on the lexicographically first long-enough
// prong of a subdivided star (token 1 at the tip), sent to the reversed
// stack. The canonical hard instance for interchange cost.
long long reversal_distance(const SubdividedGraph& g, uint32_t tokens);

std::string plan_to_json(const PlanResult& r);
std::string diameter_to_json(const DiameterResult& r);

} // namespace graphcfg
