#include "graphcfg/planner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>

#ifdef GRAPHCFG_HAS_OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "graphcfg/error.hpp"

namespace graphcfg {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max();

// Token placements are packed base-V into a uint64; the packing must cover
// V^N distinct values.
struct StateCodec {
    uint32_t v = 0;
    uint32_t n = 0;

    StateCodec(uint32_t vertices, uint32_t tokens) : v(vertices), n(tokens) {
        uint64_t cap = 1;
        for (uint32_t i = 0; i < n; ++i) {
            if (v == 0 || cap > UINT64_MAX / v) {
                throw resource_error("state space does not fit a 64-bit packing");
            }
            cap *= v;
        }
    }
    // Token 0 is the most significant digit, so packed order equals
    // lexicographic order on placement tuples.
    uint64_t pack(const std::vector<uint32_t>& pos) const {
        uint64_t s = 0;
        for (uint32_t i = 0; i < n; ++i) s = s * v + pos[i];
        return s;
    }
    void unpack(uint64_t s, std::vector<uint32_t>& pos) const {
        pos.resize(n);
        for (uint32_t i = n; i-- > 0;) {
            pos[i] = static_cast<uint32_t>(s % v);
            s /= v;
        }
    }
};

// Deterministic successor generation: tokens in ascending order, neighbor
// vertices in ascending index order; in simultaneous mode, move sets in
// token-major order with "stay" before each neighbor.
struct Successors {
    const std::vector<std::vector<uint32_t>>& adj;
    const StateCodec& codec;
    bool simultaneous;

    template <typename Fn>
    void each(const std::vector<uint32_t>& pos, Fn&& fn) const {
        if (!simultaneous) {
            std::vector<uint32_t> next = pos;
            for (uint32_t k = 0; k < codec.n; ++k) {
                for (uint32_t w : adj[pos[k]]) {
                    if (std::find(pos.begin(), pos.end(), w) != pos.end()) continue;
                    next[k] = w;
                    fn(next, k, pos[k], w);
                    next[k] = pos[k];
                }
            }
            return;
        }
        // Movers traverse pairwise-disjoint edges onto vertices free both
        // before and after the step; blocked holds current positions plus
        // chosen targets.
        std::vector<uint32_t> next = pos;
        std::vector<char> blocked(codec.v, 0);
        for (uint32_t p : pos) blocked[p] = 1;
        std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t k, uint32_t movers) {
            if (k == codec.n) {
                if (movers > 0) fn(next, UINT32_MAX, 0u, 0u);
                return;
            }
            rec(k + 1, movers);  // token k stays
            for (uint32_t w : adj[pos[k]]) {
                if (blocked[w]) continue;
                blocked[w] = 1;
                next[k] = w;
                rec(k + 1, movers + 1);
                next[k] = pos[k];
                blocked[w] = 0;
            }
        };
        rec(0, 0);
    }
};

std::vector<uint32_t> resolve_tuple(const Graph& g, const std::vector<std::string>& names,
                                    const char* what) {
    std::vector<uint32_t> pos;
    pos.reserve(names.size());
    for (const auto& name : names) {
        auto idx = g.vertex_index(name);
        if (!idx) {
            throw invalid_argument(std::string(what) + ": no vertex named '" + name + "'");
        }
        pos.push_back(*idx);
    }
    for (size_t i = 0; i < pos.size(); ++i) {
        for (size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] == pos[j]) {
                throw invalid_argument(std::string(what) + ": tokens " + std::to_string(i + 1) +
                                       " and " + std::to_string(j + 1) +
                                       " share vertex '" + names[i] + "'");
            }
        }
    }
    return pos;
}

std::vector<long long> bfs_vertex_distances(const std::vector<std::vector<uint32_t>>& adj,
                                            uint32_t src) {
    std::vector<long long> dist(adj.size(), kInf);
    std::deque<uint32_t> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop_front();
        for (uint32_t w : adj[v]) {
            if (dist[w] == kInf) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

// Lexicographic enumeration of all injective placements; fn may return false
// to stop early.
void enumerate_states(uint32_t v, uint32_t n,
                      const std::function<void(const std::vector<uint32_t>&)>& fn) {
    std::vector<uint32_t> pos;
    std::vector<char> used(v, 0);
    std::function<void()> rec = [&]() {
        if (pos.size() == n) {
            fn(pos);
            return;
        }
        for (uint32_t w = 0; w < v; ++w) {
            if (used[w]) continue;
            used[w] = 1;
            pos.push_back(w);
            rec();
            pos.pop_back();
            used[w] = 0;
        }
    };
    rec();
}

struct ParentLink {
    uint64_t prev = 0;
    uint32_t token = 0;  // 0-based; UINT32_MAX marks a simultaneous step
    uint32_t from = 0;
    uint32_t to = 0;
};

// Component ids in first-appearance order over the lexicographic state scan.
std::pair<uint64_t, uint64_t> component_ids(const StateCodec& codec, const Successors& succ,
                                            uint64_t start, uint64_t goal, uint64_t cap) {
    std::unordered_map<uint64_t, uint64_t> comp;
    uint64_t next_id = 0;
    std::vector<uint32_t> pos;
    uint64_t seen = 0;
    std::optional<uint64_t> cs, cg;
    enumerate_states(codec.v, codec.n, [&](const std::vector<uint32_t>& state) {
        uint64_t s0 = codec.pack(state);
        if (comp.count(s0)) return;
        uint64_t id = next_id++;
        std::deque<uint64_t> q{s0};
        comp.emplace(s0, id);
        while (!q.empty()) {
            uint64_t s = q.front();
            q.pop_front();
            if (++seen > cap) {
                throw resource_error("state cap of " + std::to_string(cap) +
                                     " exceeded while labeling components");
            }
            if (s == start) cs = id;
            if (s == goal) cg = id;
            codec.unpack(s, pos);
            succ.each(pos, [&](const std::vector<uint32_t>& ns, uint32_t, uint32_t, uint32_t) {
                uint64_t packed = codec.pack(ns);
                if (comp.emplace(packed, id).second) q.push_back(packed);
            });
        }
    });
    if (!cs || !cg) throw error("component labeling missed an endpoint");
    return {*cs, *cg};
}

} // namespace

PlanResult plan(const SubdividedGraph& g, const std::vector<std::string>& start,
                const std::vector<std::string>& goal, const PlanOptions& opts) {
    const Graph& gr = g.graph;
    if (start.empty()) throw invalid_argument("plan: empty start placement");
    if (start.size() != goal.size()) {
        throw invalid_argument("plan: start and goal place different token counts");
    }
    uint32_t n = static_cast<uint32_t>(start.size());
    std::vector<uint32_t> ps = resolve_tuple(gr, start, "start");
    std::vector<uint32_t> pg = resolve_tuple(gr, goal, "goal");
    auto adj = gr.adjacency();
    StateCodec codec(gr.vertex_count(), n);
    Successors succ{adj, codec, opts.simultaneous};
    uint64_t s0 = codec.pack(ps);
    uint64_t sg = codec.pack(pg);

    // Per-token distances to goal: the A* heuristic, and a fast negative.
    std::vector<std::vector<long long>> goal_dist(n);
    for (uint32_t k = 0; k < n; ++k) goal_dist[k] = bfs_vertex_distances(adj, pg[k]);
    auto heuristic = [&](const std::vector<uint32_t>& pos) -> long long {
        long long h = 0;
        for (uint32_t k = 0; k < n; ++k) {
            if (goal_dist[k][pos[k]] == kInf) return kInf;
            h += goal_dist[k][pos[k]];
        }
        return opts.simultaneous ? (h + n - 1) / n : h;
    };

    std::unordered_map<uint64_t, ParentLink> parent;
    uint64_t expanded = 0;
    bool found = s0 == sg;

    if (!found && heuristic(ps) < kInf) {
        parent.emplace(s0, ParentLink{s0, 0, 0, 0});
        if (opts.mode == PlanMode::bfs) {
            std::deque<uint64_t> q{s0};
            std::vector<uint32_t> pos;
            while (!q.empty() && !found) {
                uint64_t s = q.front();
                q.pop_front();
                ++expanded;
                codec.unpack(s, pos);
                succ.each(pos, [&](const std::vector<uint32_t>& ns, uint32_t k, uint32_t from,
                                   uint32_t to) {
                    if (found) return;
                    uint64_t packed = codec.pack(ns);
                    if (!parent.emplace(packed, ParentLink{s, k, from, to}).second) return;
                    if (parent.size() > opts.state_cap) {
                        throw resource_error("state cap of " + std::to_string(opts.state_cap) +
                                             " exceeded");
                    }
                    if (packed == sg) {
                        found = true;
                        return;
                    }
                    q.push_back(packed);
                });
            }
        } else {
            // A* with a consistent heuristic; ties on f resolved by insertion
            // order, so expansion is deterministic.
            struct Entry {
                long long f;
                uint64_t seq;
                uint64_t state;
                long long g;
                bool operator>(const Entry& o) const {
                    return f != o.f ? f > o.f : seq > o.seq;
                }
            };
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
            std::unordered_map<uint64_t, long long> best;
            uint64_t seq = 0;
            std::vector<uint32_t> pos;
            codec.unpack(s0, pos);
            best[s0] = 0;
            open.push({heuristic(pos), seq++, s0, 0});
            while (!open.empty()) {
                Entry e = open.top();
                open.pop();
                if (e.g != best.at(e.state)) continue;  // stale entry
                if (e.state == sg) {
                    found = true;
                    break;
                }
                ++expanded;
                codec.unpack(e.state, pos);
                succ.each(pos, [&](const std::vector<uint32_t>& ns, uint32_t k, uint32_t from,
                                   uint32_t to) {
                    uint64_t packed = codec.pack(ns);
                    long long ng = e.g + 1;
                    auto it = best.find(packed);
                    if (it != best.end() && it->second <= ng) return;
                    long long h = heuristic(ns);
                    if (h == kInf) return;
                    best[packed] = ng;
                    parent[packed] = ParentLink{e.state, k, from, to};
                    if (best.size() > opts.state_cap) {
                        throw resource_error("state cap of " + std::to_string(opts.state_cap) +
                                             " exceeded");
                    }
                    open.push({ng + h, seq++, packed, ng});
                });
            }
        }
    }

    if (!found) {
        auto [cs, cg] = component_ids(codec, succ, s0, sg, opts.state_cap);
        return Unreachable{cs, cg};
    }

    Plan p;
    p.start = start;
    p.goal = goal;
    p.mode = opts.mode;
    p.expanded = expanded;

    std::vector<uint64_t> chain{sg};
    while (chain.back() != s0) chain.push_back(parent.at(chain.back()).prev);
    std::reverse(chain.begin(), chain.end());
    std::vector<uint32_t> prev_pos, cur_pos;
    for (size_t i = 1; i < chain.size(); ++i) {
        const ParentLink& link = parent.at(chain[i]);
        if (link.token != UINT32_MAX) {
            p.moves.push_back(Move{link.token + 1, gr.vertex_name(link.from),
                                   gr.vertex_name(link.to)});
        } else {
            // Simultaneous step: emit one Move per token that changed, in
            // token order, all belonging to this single step.
            codec.unpack(chain[i - 1], prev_pos);
            codec.unpack(chain[i], cur_pos);
            for (uint32_t k = 0; k < n; ++k) {
                if (prev_pos[k] != cur_pos[k]) {
                    p.moves.push_back(Move{k + 1, gr.vertex_name(prev_pos[k]),
                                           gr.vertex_name(cur_pos[k])});
                }
            }
        }
    }
    p.length = chain.size() - 1;

    if (n >= 2) {
        // All-pairs token separation along the plan, via one BFS per distinct
        // vertex visited. Pairs in different components never meet and are
        // ignored.
        std::unordered_map<uint32_t, std::vector<long long>> from_vertex;
        long long gap = kInf;
        std::vector<uint32_t> pos;
        for (uint64_t s : chain) {
            codec.unpack(s, pos);
            for (uint32_t i = 0; i < n; ++i) {
                auto it = from_vertex.find(pos[i]);
                if (it == from_vertex.end()) {
                    it = from_vertex.emplace(pos[i], bfs_vertex_distances(adj, pos[i])).first;
                }
                for (uint32_t j = 0; j < n; ++j) {
                    if (j != i && it->second[pos[j]] < gap) gap = it->second[pos[j]];
                }
            }
        }
        if (gap < kInf) p.min_token_gap = gap;
    }
    return p;
}

DiameterResult diameter(const SubdividedGraph& g, uint32_t tokens, uint64_t state_cap) {
    const Graph& gr = g.graph;
    if (tokens < 1) throw invalid_argument("diameter: need at least one token");
    if (gr.vertex_count() < tokens) {
        throw invalid_argument("diameter: more tokens than vertices, no states exist");
    }
    auto adj = gr.adjacency();
    StateCodec codec(gr.vertex_count(), tokens);
    Successors succ{adj, codec, false};

    // Label every state, in lexicographic order, with a component id.
    std::unordered_map<uint64_t, uint64_t> comp;
    std::vector<uint64_t> comp_size;
    std::vector<std::vector<uint64_t>> members;  // per component, in scan order
    enumerate_states(codec.v, codec.n, [&](const std::vector<uint32_t>& state) {
        uint64_t s0 = codec.pack(state);
        if (comp.count(s0)) return;
        uint64_t id = comp_size.size();
        comp_size.push_back(0);
        members.emplace_back();
        std::deque<uint64_t> q{s0};
        comp.emplace(s0, id);
        std::vector<uint32_t> pos;
        while (!q.empty()) {
            uint64_t s = q.front();
            q.pop_front();
            ++comp_size[id];
            members[id].push_back(s);
            if (comp.size() > state_cap) {
                throw resource_error("state cap of " + std::to_string(state_cap) + " exceeded");
            }
            codec.unpack(s, pos);
            succ.each(pos, [&](const std::vector<uint32_t>& ns, uint32_t, uint32_t, uint32_t) {
                uint64_t packed = codec.pack(ns);
                if (comp.emplace(packed, id).second) q.push_back(packed);
            });
        }
    });

    uint64_t big = 0;
    for (uint64_t i = 1; i < comp_size.size(); ++i) {
        if (comp_size[i] > comp_size[big]) big = i;
    }
    std::vector<uint64_t> states = std::move(members[big]);
    std::sort(states.begin(), states.end());
    size_t m = states.size();
    std::unordered_map<uint64_t, uint32_t> local;
    local.reserve(m);
    for (size_t i = 0; i < m; ++i) local.emplace(states[i], static_cast<uint32_t>(i));

    // Dense successor lists so the per-source sweeps are array walks.
    std::vector<uint32_t> off(m + 1, 0);
    std::vector<uint32_t> flat;
    {
        std::vector<uint32_t> pos;
        for (size_t i = 0; i < m; ++i) {
            codec.unpack(states[i], pos);
            succ.each(pos, [&](const std::vector<uint32_t>& ns, uint32_t, uint32_t, uint32_t) {
                flat.push_back(local.at(codec.pack(ns)));
            });
            off[i + 1] = static_cast<uint32_t>(flat.size());
        }
    }

    long long best_d = -1;
    uint64_t best_src = 0, best_dst = 0;
#ifdef GRAPHCFG_HAS_OPENMP
#pragma omp parallel
#endif
    {
        long long loc_d = -1;
        uint64_t loc_src = 0, loc_dst = 0;
        std::vector<int32_t> dist(m);
        std::vector<uint32_t> q(m);
#ifdef GRAPHCFG_HAS_OPENMP
#pragma omp for schedule(dynamic, 8)
#endif
        for (long long src = 0; src < static_cast<long long>(m); ++src) {
            std::fill(dist.begin(), dist.end(), -1);
            size_t head = 0, tail = 0;
            q[tail++] = static_cast<uint32_t>(src);
            dist[src] = 0;
            long long far_d = 0;
            uint64_t far_dst = states[src];
            while (head < tail) {
                uint32_t u = q[head++];
                for (uint32_t s = off[u]; s < off[u + 1]; ++s) {
                    uint32_t w = flat[s];
                    if (dist[w] >= 0) continue;
                    dist[w] = dist[u] + 1;
                    q[tail++] = w;
                    if (dist[w] > far_d || (dist[w] == far_d && states[w] < far_dst)) {
                        far_d = dist[w];
                        far_dst = states[w];
                    }
                }
            }
            if (far_d > loc_d ||
                (far_d == loc_d &&
                 (states[src] < loc_src || (states[src] == loc_src && far_dst < loc_dst)))) {
                loc_d = far_d;
                loc_src = states[src];
                loc_dst = far_dst;
            }
        }
#ifdef GRAPHCFG_HAS_OPENMP
#pragma omp critical
#endif
        {
            if (loc_d > best_d ||
                (loc_d == best_d &&
                 (loc_src < best_src || (loc_src == best_src && loc_dst < best_dst)))) {
                best_d = loc_d;
                best_src = loc_src;
                best_dst = loc_dst;
            }
        }
    }

    DiameterResult out;
    out.diameter = best_d;
    out.states = comp.size();
    out.component_states = m;
    std::vector<uint32_t> pos;
    codec.unpack(best_src, pos);
    for (uint32_t v : pos) out.from.push_back(gr.vertex_name(v));
    codec.unpack(best_dst, pos);
    for (uint32_t v : pos) out.to.push_back(gr.vertex_name(v));
    return out;
}

long long reversal_distance(const SubdividedGraph& g, uint32_t tokens) {
    const Graph& gr = g.graph;
    if (tokens < 1) throw invalid_argument("reversal_distance: need at least one token");
    std::vector<std::string> essential = gr.essential_vertices();
    if (essential.size() != 1) {
        throw invalid_argument("reversal_distance: the graph must be a subdivided star "
                               "(exactly one essential vertex)");
    }
    if (gr.first_betti() != 0 || !gr.is_connected()) {
        throw invalid_argument("reversal_distance: the graph must be a subdivided star");
    }
    uint32_t center = *gr.vertex_index(essential[0]);
    auto adj = gr.adjacency();

    // Prongs: chains from the center to each leaf, listed tip-first. The
    // instance lives on the lexicographically first (by tip name) prong with
    // room for all tokens.
    std::vector<std::vector<uint32_t>> prongs;
    for (uint32_t w0 : adj[center]) {
        std::vector<uint32_t> prong;
        uint32_t prev = center, cur = w0;
        for (;;) {
            prong.push_back(cur);
            uint32_t next = UINT32_MAX;
            for (uint32_t x : adj[cur]) {
                if (x != prev) next = x;
            }
            if (next == UINT32_MAX) break;
            prev = cur;
            cur = next;
        }
        std::reverse(prong.begin(), prong.end());  // tip first
        prongs.push_back(std::move(prong));
    }
    std::sort(prongs.begin(), prongs.end(),
              [&](const auto& a, const auto& b) {
                  return gr.vertex_name(a[0]) < gr.vertex_name(b[0]);
              });
    const std::vector<uint32_t>* chosen = nullptr;
    for (const auto& p : prongs) {
        if (p.size() >= tokens) {
            chosen = &p;
            break;
        }
    }
    if (!chosen) {
        throw invalid_argument("reversal_distance: no prong holds " + std::to_string(tokens) +
                               " tokens; subdivide further");
    }

    std::vector<std::string> start, goal;
    for (uint32_t k = 0; k < tokens; ++k) start.push_back(gr.vertex_name((*chosen)[k]));
    for (uint32_t k = 0; k < tokens; ++k) goal.push_back(gr.vertex_name((*chosen)[tokens - 1 - k]));
    PlanResult r = plan(g, start, goal, {});
    if (!std::holds_alternative<Plan>(r)) {
        throw error("reversal_distance: instance unexpectedly unreachable");
    }
    return static_cast<long long>(std::get<Plan>(r).length);
}

std::string plan_to_json(const PlanResult& r) {
    nlohmann::ordered_json j;
    if (std::holds_alternative<Unreachable>(r)) {
        const auto& u = std::get<Unreachable>(r);
        j["reachable"] = false;
        j["components"] = {u.start_component, u.goal_component};
        return j.dump(2);
    }
    const Plan& p = std::get<Plan>(r);
    j["start"] = p.start;
    j["goal"] = p.goal;
    nlohmann::ordered_json moves = nlohmann::ordered_json::array();
    for (const auto& m : p.moves) {
        moves.push_back({{"token", m.token}, {"from", m.from}, {"to", m.to}});
    }
    j["moves"] = std::move(moves);
    j["length"] = p.length;
    j["mode"] = p.mode == PlanMode::bfs ? "bfs" : "astar";
    j["expanded"] = p.expanded;
    if (p.min_token_gap) {
        j["min_token_gap"] = *p.min_token_gap;
    } else {
        j["min_token_gap"] = nullptr;
    }
    return j.dump(2);
}

std::string diameter_to_json(const DiameterResult& r) {
    nlohmann::ordered_json j;
    j["diameter"] = r.diameter;
    j["from"] = r.from;
    j["to"] = r.to;
    j["states"] = r.states;
    j["component_states"] = r.component_states;
    return j.dump(2);
}

} // namespace graphcfg
