#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphcfg/error.hpp"

namespace graphcfg {

struct Edge {
    std::string id;
    uint32_t u = 0;
    uint32_t v = 0;
};

// Undirected multigraph with string-named vertices and edges. Loops and
// parallel edges are permitted. Vertex indices follow declaration order;
// downstream determinism (cell indexing, boundary signs) hangs off it.
class Graph {
public:
    uint32_t add_vertex(const std::string& id);
    void add_edge(const std::string& id, const std::string& u, const std::string& v);

    uint32_t vertex_count() const { return static_cast<uint32_t>(names_.size()); }
    uint32_t edge_count() const { return static_cast<uint32_t>(edges_.size()); }
    const std::string& vertex_name(uint32_t i) const { return names_[i]; }
    const std::vector<std::string>& vertex_names() const { return names_; }
    std::optional<uint32_t> vertex_index(const std::string& id) const;
    const Edge& edge(uint32_t i) const { return edges_[i]; }
    const std::vector<Edge>& edges() const { return edges_; }

    uint32_t degree(uint32_t v) const;  // loops count twice
    // Sorted, deduplicated neighbor lists; self entries from loops excluded.
    std::vector<std::vector<uint32_t>> adjacency() const;
    bool is_simple() const;
    uint32_t component_count() const;
    bool is_connected() const { return vertex_count() == 0 || component_count() == 1; }
    bool is_tree() const;
    // Vertices of valence > 2, sorted by identifier.
    std::vector<std::string> essential_vertices() const;
    // True iff connected and every vertex has degree exactly 2.
    bool is_circle() const;
    // Obstacle deletion: the graph without vertex v and its incident edges.
    Graph without_vertex(uint32_t v) const;
    long long first_betti() const;  // E - V + components

    std::string to_text() const;
    std::string to_json() const;

private:
    std::vector<std::string> names_;
    std::vector<Edge> edges_;
};

Graph parse_graph(const std::string& text);
Graph parse_graph_json(const std::string& text);
// Reads a file, dispatching on the ".json" suffix.
Graph load_graph(const std::string& path);

// Refinement of a Graph into a simple graph: each parent edge becomes a path
// of `factor` segments through factor-1 fresh vertices named "<edge-id>#<k>".
// Original vertices keep their indices; fresh vertices follow in edge order.
struct SubdividedGraph {
    Graph graph;
    uint32_t factor = 1;
    uint32_t original_vertices = 0;
    // Per edge of `graph`: (parent edge id, segment index 1..factor).
    std::vector<std::pair<std::string, uint32_t>> parent_edge;
};

// Errors if the result would not be simple (e.g. a loop at factor < 3).
SubdividedGraph subdivide(const Graph& g, uint32_t factor);

// Default refinement at which the discrete model is taken as faithful.
constexpr uint32_t faithful_factor(uint32_t tokens) { return tokens + 1; }

} // namespace graphcfg
