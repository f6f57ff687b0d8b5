#include "graphcfg/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace graphcfg {

namespace {

struct DisjointSet {
    std::vector<uint32_t> parent;
    explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

} // namespace

uint32_t Graph::add_vertex(const std::string& id) {
    for (const auto& n : names_)
        if (n == id) throw parse_error("duplicate vertex identifier '" + id + "'");
    names_.push_back(id);
    return static_cast<uint32_t>(names_.size() - 1);
}

void Graph::add_edge(const std::string& id, const std::string& u, const std::string& v) {
    for (const auto& e : edges_)
        if (e.id == id) throw parse_error("duplicate edge identifier '" + id + "'");
    auto ui = vertex_index(u);
    if (!ui) throw parse_error("edge '" + id + "' references unknown vertex '" + u + "'");
    auto vi = vertex_index(v);
    if (!vi) throw parse_error("edge '" + id + "' references unknown vertex '" + v + "'");
    edges_.push_back(Edge{id, *ui, *vi});
}

std::optional<uint32_t> Graph::vertex_index(const std::string& id) const {
    for (uint32_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return i;
    return std::nullopt;
}

uint32_t Graph::degree(uint32_t v) const {
    uint32_t d = 0;
    for (const auto& e : edges_) {
        if (e.u == v) ++d;
        if (e.v == v) ++d;
    }
    return d;
}

std::vector<std::vector<uint32_t>> Graph::adjacency() const {
    std::vector<std::set<uint32_t>> nb(vertex_count());
    for (const auto& e : edges_) {
        if (e.u != e.v) {
            nb[e.u].insert(e.v);
            nb[e.v].insert(e.u);
        }
    }
    std::vector<std::vector<uint32_t>> out(vertex_count());
    for (uint32_t i = 0; i < vertex_count(); ++i) out[i].assign(nb[i].begin(), nb[i].end());
    return out;
}

bool Graph::is_simple() const {
    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (const auto& e : edges_) {
        if (e.u == e.v) return false;
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

uint32_t Graph::component_count() const {
    DisjointSet ds(vertex_count());
    for (const auto& e : edges_) ds.unite(e.u, e.v);
    std::set<uint32_t> roots;
    for (uint32_t i = 0; i < vertex_count(); ++i) roots.insert(ds.find(i));
    return static_cast<uint32_t>(roots.size());
}

bool Graph::is_tree() const {
    return vertex_count() > 0 && is_connected() &&
           edge_count() + 1 == vertex_count();
}

std::vector<std::string> Graph::essential_vertices() const {
    std::vector<std::string> out;
    for (uint32_t i = 0; i < vertex_count(); ++i)
        if (degree(i) > 2) out.push_back(names_[i]);
    std::sort(out.begin(), out.end());
    return out;
}

bool Graph::is_circle() const {
    if (!is_connected()) throw invalid_argument("is_circle requires a connected graph");
    if (vertex_count() == 0) return false;
    for (uint32_t i = 0; i < vertex_count(); ++i)
        if (degree(i) != 2) return false;
    return true;
}

Graph Graph::without_vertex(uint32_t v) const {
    Graph g;
    for (uint32_t i = 0; i < vertex_count(); ++i)
        if (i != v) g.add_vertex(names_[i]);
    for (const auto& e : edges_)
        if (e.u != v && e.v != v) g.add_edge(e.id, names_[e.u], names_[e.v]);
    return g;
}

long long Graph::first_betti() const {
    return static_cast<long long>(edge_count()) - vertex_count() + component_count();
}

std::string Graph::to_text() const {
    std::ostringstream os;
    for (const auto& n : names_) os << "v " << n << "\n";
    for (const auto& e : edges_) os << "e " << e.id << " " << names_[e.u] << " " << names_[e.v] << "\n";
    return os.str();
}

std::string Graph::to_json() const {
    nlohmann::ordered_json j;
    j["vertices"] = names_;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : edges_) {
        nlohmann::ordered_json je;
        je["id"] = e.id;
        je["ends"] = {names_[e.u], names_[e.v]};
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

Graph parse_graph(const std::string& text) {
    Graph g;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        try {
            if (kind == "v") {
                std::string id, extra;
                if (!(ls >> id)) throw parse_error("vertex record needs an identifier");
                if (ls >> extra) throw parse_error("unexpected token '" + extra + "' after vertex record");
                g.add_vertex(id);
            } else if (kind == "e") {
                std::string id, u, v, extra;
                if (!(ls >> id >> u >> v)) throw parse_error("edge record needs an id and two endpoints");
                if (ls >> extra) throw parse_error("unexpected token '" + extra + "' after edge record");
                g.add_edge(id, u, v);
            } else {
                throw parse_error("unknown record type '" + kind + "'");
            }
        } catch (const parse_error& e) {
            throw parse_error(e.what(), lineno);
        }
    }
    return g;
}

Graph parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw parse_error("graph JSON must be an object with 'vertices' and 'edges'");
    Graph g;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw parse_error("vertex entries must be strings");
        g.add_vertex(v.get<std::string>());
    }
    for (const auto& e : j["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e.contains("ends") || !e["ends"].is_array() ||
            e["ends"].size() != 2)
            throw parse_error("edge entries must be {\"id\":..., \"ends\":[u,v]}");
        g.add_edge(e["id"].get<std::string>(), e["ends"][0].get<std::string>(),
                   e["ends"][1].get<std::string>());
    }
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return parse_graph_json(buf.str());
    return parse_graph(buf.str());
}

SubdividedGraph subdivide(const Graph& g, uint32_t factor) {
    if (factor < 1) throw invalid_argument("subdivision factor must be >= 1");
    SubdividedGraph s;
    s.factor = factor;
    s.original_vertices = g.vertex_count();
    for (const auto& n : g.vertex_names()) s.graph.add_vertex(n);
    for (const auto& e : g.edges()) {
        std::string prev = g.vertex_name(e.u);
        for (uint32_t k = 1; k < factor; ++k) {
            std::string fresh = e.id + "#" + std::to_string(k);
            s.graph.add_vertex(fresh);
            s.graph.add_edge(e.id + "." + std::to_string(k), prev, fresh);
            s.parent_edge.emplace_back(e.id, k);
            prev = fresh;
        }
        s.graph.add_edge(factor == 1 ? e.id : e.id + "." + std::to_string(factor), prev,
                         g.vertex_name(e.v));
        s.parent_edge.emplace_back(e.id, factor);
    }
    if (!s.graph.is_simple())
        throw invalid_argument(
            "subdivision at factor " + std::to_string(factor) +
            " leaves loops or parallel edges; use a larger factor (loops need >= 3)");
    return s;
}

} // namespace graphcfg
