#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphcfg/graph.hpp"

namespace graphcfg {

// One named reference check. `provenance` records where the expected value
// comes from: "paper" (published reference value), "derived" (frozen from an
// independent oracle), or "trivial" (definitional).
struct Check {
    std::string name;
    std::string group;
    std::string provenance;
    std::string expected;
    std::string computed;
    bool pass = false;
    double ms = 0.0;
};

struct VerifyOptions {
    // Substring filter on check name or group; empty runs everything.
    std::string filter;
    // Adds the long-running stability checks.
    bool deep = false;
    // Load fixtures from this directory instead of the embedded copies.
    std::optional<std::string> fixtures_dir;
};

struct VerifyResult {
    std::vector<Check> checks;
    bool all_pass = true;
};

VerifyResult run_verify(const VerifyOptions& opts = {});

// The reference inputs, embedded so verification needs no files. The repo
// fixtures/ directory holds byte-identical copies.
const std::map<std::string, std::string>& embedded_fixtures();
Graph fixture_graph(const std::string& name, const std::optional<std::string>& dir = {});

// stable=true omits timings so output is byte-stable across runs.
std::string verify_to_json(const VerifyResult& r, bool stable);
std::string verify_to_table(const VerifyResult& r);

} // namespace graphcfg
