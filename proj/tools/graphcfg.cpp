#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphcfg/complex.hpp"
#include "graphcfg/error.hpp"
#include "graphcfg/formulas.hpp"
#include "graphcfg/invariants.hpp"
#include "graphcfg/planner.hpp"
#include "graphcfg/reduction.hpp"
#include "graphcfg/verify.hpp"

namespace {

using namespace graphcfg;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) out.push_back(item);
    return out;
}

uint64_t cell_cap_from_env() {
    const char* env = std::getenv("GRAPHCFG_CELL_CAP");
    if (!env) return BuildOptions{}.cell_cap;
    std::string v(env);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
        throw invalid_argument("GRAPHCFG_CELL_CAP must be a nonnegative integer, got '" + v + "'");
    }
    return std::stoull(v);
}

// factor 0 means "pick the faithful refinement"; an explicit lower choice is
// accepted with a warning since counts can differ below the stable range.
uint32_t resolve_factor(uint32_t factor, uint32_t tokens) {
    if (factor == 0) return faithful_factor(tokens);
    if (factor < faithful_factor(tokens)) {
        std::cerr << "warning: refinement " << factor << " is below " << tokens + 1
                  << "; homology can differ from the faithful range\n";
    }
    return factor;
}

CubeComplex build_from_file(const std::string& file, uint32_t tokens, uint32_t factor) {
    BuildOptions opts;
    opts.cell_cap = cell_cap_from_env();
    return build_complex(subdivide(load_graph(file), factor), tokens, opts);
}

void cmd_graph(const std::string& file, bool json) {
    Graph g = load_graph(file);
    bool circle = g.is_connected() && g.is_circle();
    if (json) {
        nlohmann::ordered_json j;
        j["vertices"] = g.vertex_count();
        j["edges"] = g.edge_count();
        j["components"] = g.component_count();
        j["simple"] = g.is_simple();
        j["tree"] = g.is_tree();
        j["circle"] = circle;
        j["first_betti"] = g.first_betti();
        j["essential_vertices"] = g.essential_vertices();
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << g.vertex_count() << " vertices, " << g.edge_count() << " edges, "
              << g.component_count() << " component(s)\n";
    std::cout << "simple: " << (g.is_simple() ? "yes" : "no") << ", tree: "
              << (g.is_tree() ? "yes" : "no") << ", circle: " << (circle ? "yes" : "no")
              << ", first betti: " << g.first_betti() << "\n";
    std::cout << "essential vertices:";
    for (const auto& v : g.essential_vertices()) std::cout << " " << v;
    std::cout << "\n";
}

void cmd_complex(const std::string& file, uint32_t tokens, uint32_t factor, bool cells, bool dot,
                 bool json) {
    CubeComplex c = build_from_file(file, tokens, resolve_factor(factor, tokens));
    if (dot) {
        std::cout << skeleton_to_dot(c);
        return;
    }
    if (json) {
        std::cout << complex_to_json(c, cells) << "\n";
        return;
    }
    std::vector<long long> f = c.f_vector();
    std::cout << "tokens " << tokens << ", refinement " << resolve_factor(factor, tokens)
              << ": dimension " << c.dim() << ", " << c.total_cells() << " cells, f-vector (";
    for (size_t i = 0; i < f.size(); ++i) std::cout << (i ? ", " : "") << f[i];
    std::cout << ")\n";
}

void cmd_invariants(const std::string& file, uint32_t tokens, uint32_t factor, int64_t prime,
                    bool do_collapse, bool json) {
    CubeComplex c = build_from_file(file, tokens, resolve_factor(factor, tokens));
    InvariantReport rep;
    rep.prime = prime;
    rep.f_vector = c.f_vector();
    rep.euler = euler_characteristic(c);
    uint32_t dim = c.dim();
    const CubeComplex* hom = &c;
    CollapseTrace trace;
    if (do_collapse) {
        trace = collapse(c);
        hom = &trace.residual;
    }
    InvariantReport inner = invariant_report(*hom, prime);
    rep.betti = inner.betti;
    rep.betti.resize(dim + 1, 0);
    rep.torsion = inner.torsion;
    // Dimensions collapsed away carry no cells, hence no torsion.
    while (rep.torsion.size() < dim + 1) rep.torsion.push_back(std::vector<std::string>{});
    if (json) {
        std::cout << report_to_json(rep) << "\n";
        return;
    }
    std::cout << "f-vector (";
    for (size_t i = 0; i < rep.f_vector.size(); ++i) {
        std::cout << (i ? ", " : "") << rep.f_vector[i];
    }
    std::cout << ")\neuler " << rep.euler << "\nbetti (";
    for (size_t i = 0; i < rep.betti.size(); ++i) std::cout << (i ? ", " : "") << rep.betti[i];
    std::cout << ")  [mod " << rep.prime << ", cross-checked]\n";
    for (size_t d = 0; d < rep.torsion.size(); ++d) {
        std::cout << "torsion H_" << d << ": ";
        if (!rep.torsion[d]) {
            std::cout << "not computed (over the column cap)\n";
        } else if (rep.torsion[d]->empty()) {
            std::cout << "none\n";
        } else {
            for (const auto& t : *rep.torsion[d]) std::cout << t << " ";
            std::cout << "\n";
        }
    }
}

void cmd_reduce(const std::string& file, uint32_t tokens, uint32_t factor, bool dot, bool json) {
    CubeComplex c = build_from_file(file, tokens, resolve_factor(factor, tokens));
    CollapseTrace t = collapse(c);
    if (dot) {
        std::cout << skeleton_to_dot(t.residual);
        return;
    }
    if (json) {
        std::cout << trace_to_json(t, true) << "\n";
        return;
    }
    std::cout << "cells " << t.cells_before << " -> " << t.cells_after << ", dimension "
              << t.dim_before << " -> " << t.dim_after << ", " << t.pairs.size()
              << " collapse pairs\n";
    std::vector<long long> f = t.residual.f_vector();
    std::cout << "residual f-vector (";
    for (size_t i = 0; i < f.size(); ++i) std::cout << (i ? ", " : "") << f[i];
    std::cout << ")\n";
}

void cmd_formulas(uint32_t nmax, uint32_t kmax, uint64_t budget, bool csv, bool json) {
    std::vector<FormulaRow> rows = formula_table(nmax, kmax, budget);
    if (json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["n"] = r.n;
            j["k"] = r.k;
            j["e"] = r.e.str();
            j["chi_closed"] = r.chi_closed.str();
            j["chi_recursive"] = r.chi_recursive.str();
            j["q"] = r.q.str();
            if (r.b1_complex) {
                j["b1_complex"] = *r.b1_complex;
            } else {
                j["b1_complex"] = nullptr;
            }
            arr.push_back(std::move(j));
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::cout << (csv ? table_to_csv(rows) : table_to_text(rows));
}

int cmd_plan(const std::string& file, const std::string& start_csv, const std::string& goal_csv,
             uint32_t tokens, const std::string& mode, bool simultaneous, uint64_t state_cap,
             bool json) {
    std::vector<std::string> start = split_csv(start_csv);
    std::vector<std::string> goal = split_csv(goal_csv);
    if (tokens != 0 && tokens != start.size()) {
        throw invalid_argument("--tokens says " + std::to_string(tokens) + " but --start names " +
                               std::to_string(start.size()) + " vertices");
    }
    PlanOptions opts;
    opts.mode = mode == "astar" ? PlanMode::astar : PlanMode::bfs;
    opts.simultaneous = simultaneous;
    opts.state_cap = state_cap;
    PlanResult r = plan(subdivide(load_graph(file), 1), start, goal, opts);
    if (json) {
        std::cout << plan_to_json(r) << "\n";
    } else if (std::holds_alternative<Unreachable>(r)) {
        const auto& u = std::get<Unreachable>(r);
        std::cout << "unreachable: start in state component " << u.start_component
                  << ", goal in state component " << u.goal_component << "\n";
    } else {
        const Plan& p = std::get<Plan>(r);
        std::cout << "length " << p.length << " (" << mode << ", " << p.expanded
                  << " states expanded";
        if (p.min_token_gap) std::cout << ", min token gap " << *p.min_token_gap;
        std::cout << ")\n";
        for (const auto& m : p.moves) {
            std::cout << "  token " << m.token << ": " << m.from << " -> " << m.to << "\n";
        }
    }
    return std::holds_alternative<Unreachable>(r) ? 2 : 0;
}

void cmd_diameter(const std::string& file, uint32_t tokens, uint32_t factor, uint64_t state_cap,
                  bool json) {
    DiameterResult r = diameter(subdivide(load_graph(file), factor), tokens, state_cap);
    if (json) {
        std::cout << diameter_to_json(r) << "\n";
        return;
    }
    std::cout << "diameter " << r.diameter << " over " << r.component_states << " states ("
              << r.states << " total)\n";
    std::cout << "from:";
    for (const auto& v : r.from) std::cout << " " << v;
    std::cout << "\nto:  ";
    for (const auto& v : r.to) std::cout << " " << v;
    std::cout << "\n";
}

int cmd_verify(const std::string& filter, bool deep, const std::string& fixtures, bool json,
               bool stable) {
    VerifyOptions opts;
    opts.filter = filter;
    opts.deep = deep;
    if (!fixtures.empty()) opts.fixtures_dir = fixtures;
    VerifyResult r = run_verify(opts);
    if (json) {
        std::cout << verify_to_json(r, stable) << "\n";
    } else {
        std::cout << verify_to_table(r);
    }
    return r.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete configuration spaces of labeled tokens on graphs"};
    app.require_subcommand(1);
    bool json = false, stable = false;
    app.add_flag("--json", json, "emit JSON");
    app.add_flag("--stable", stable, "omit volatile fields (timings) for byte-stable output");

    int exit_code = 0;

    std::string file, start_csv, goal_csv, mode = "bfs", filter, fixtures;
    uint32_t tokens = 0, factor = 0, nmax = 6, kmax = 7;
    int64_t prime = default_prime;
    uint64_t state_cap = PlanOptions{}.state_cap, budget = 1000000;
    bool cells = false, dot = false, do_collapse = true, simultaneous = false, csv = false,
         deep = false;

    auto* g = app.add_subcommand("graph", "parse a graph file and summarize it");
    g->add_option("file", file, "graph file (.graph text or .json)")->required();
    g->callback([&] { cmd_graph(file, json); });

    auto* cx = app.add_subcommand("complex", "build the token configuration complex");
    cx->add_option("file", file)->required();
    cx->add_option("-n,--tokens", tokens, "number of labeled tokens")->required();
    cx->add_option("-f,--factor", factor, "edge refinement (default: tokens+1)");
    cx->add_flag("--cells", cells, "include the cell list in JSON output");
    cx->add_flag("--dot", dot, "emit the 1-skeleton in DOT form");
    cx->callback([&] { cmd_complex(file, tokens, factor, cells, dot, json); });

    auto* inv = app.add_subcommand("invariants", "Euler characteristic, Betti numbers, torsion");
    inv->add_option("file", file)->required();
    inv->add_option("-n,--tokens", tokens)->required();
    inv->add_option("-f,--factor", factor, "edge refinement (default: tokens+1)");
    inv->add_option("--prime", prime, "field prime for the modular ranks");
    inv->add_flag("--collapse,!--no-collapse", do_collapse,
                  "collapse before computing homology (default on)");
    inv->callback([&] { cmd_invariants(file, tokens, factor, prime, do_collapse, json); });

    auto* red = app.add_subcommand("reduce", "greedy elementary collapse with a full trace");
    red->add_option("file", file)->required();
    red->add_option("-n,--tokens", tokens)->required();
    red->add_option("-f,--factor", factor, "edge refinement (default: tokens+1)");
    red->add_flag("--dot", dot, "emit the residual 1-skeleton in DOT form");
    red->callback([&] { cmd_reduce(file, tokens, factor, dot, json); });

    auto* form = app.add_subcommand("formulas", "radial-tree formula table with cross-checks");
    form->add_option("--nmax", nmax, "largest token count (default 6)");
    form->add_option("--kmax", kmax, "largest branch count (default 7)");
    form->add_option("--budget", budget, "cell budget for the complex column");
    form->add_flag("--csv", csv, "CSV instead of an aligned table");
    form->callback([&] { cmd_formulas(nmax, kmax, budget, csv, json); });

    auto* pl = app.add_subcommand("plan", "optimal collision-free token routing");
    pl->add_option("file", file)->required();
    pl->add_option("--start", start_csv, "comma-separated start vertices, one per token")
        ->required();
    pl->add_option("--goal", goal_csv, "comma-separated goal vertices")->required();
    pl->add_option("-n,--tokens", tokens, "token count (checked against --start)");
    pl->add_option("--mode", mode, "bfs or astar")
        ->check(CLI::IsMember({"bfs", "astar"}));
    pl->add_flag("--simultaneous", simultaneous, "allow disjoint simultaneous moves");
    pl->add_option("--state-cap", state_cap, "visited-state cap");
    pl->callback(
        [&] { exit_code = cmd_plan(file, start_csv, goal_csv, tokens, mode, simultaneous,
                                   state_cap, json); });

    auto* dia = app.add_subcommand("diameter", "exact diameter of the largest state component");
    dia->add_option("file", file)->required();
    dia->add_option("-n,--tokens", tokens)->required();
    dia->add_option("-f,--factor", factor, "edge refinement (default: 1, the graph itself)");
    dia->add_option("--state-cap", state_cap, "state cap");
    dia->callback([&] { cmd_diameter(file, tokens, factor == 0 ? 1 : factor, state_cap, json); });

    auto* ver = app.add_subcommand("verify", "run the named reference checks");
    ver->add_option("--filter", filter, "substring filter on check name or group");
    ver->add_flag("--deep", deep, "include the long-running stability checks");
    ver->add_option("--fixtures", fixtures, "read fixtures from this directory, not the embedded copies");
    ver->callback([&] { exit_code = cmd_verify(filter, deep, fixtures, json, stable); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const graphcfg::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
