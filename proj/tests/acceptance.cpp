// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Criteria 1..8 partition the named reference checks by group and add a
// wall-clock budget where one is part of the criterion; criterion 9 demands
// a clean full CLI verification run.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "graphcfg/verify.hpp"

using namespace graphcfg;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::string group;
    double budget_s;  // 0 = no time budget
};

int cli_verify_exit_code() {
    std::string cmd = std::string(GRAPHCFG_CLI_PATH) + " verify > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "radial recursion matches the closed forms on the grid", "radial", 1.0},
        {2, "closed-form b1 matches the built complexes", "formula-vs-complex", 60.0},
        {3, "reference invariant table reproduced", "fixture-table", 120.0},
        {4, "four tokens on the bridge graph", "h4", 600.0},
        {5, "residual dimension bounded by essential vertices", "dimension", 0.0},
        {6, "boundary, collapse, refinement, and slice identities", "structural", 0.0},
        {7, "first homology of the references is torsion-free", "torsion", 0.0},
        {8, "planner agreement, reversal, and diameter", "planner", 120.0},
    };

    VerifyResult all = run_verify({});

    bool ok = true;
    for (const auto& cr : criteria) {
        int n = 0, failed = 0;
        double ms = 0.0;
        std::string first_fail;
        for (const auto& c : all.checks) {
            if (c.group != cr.group) continue;
            ++n;
            ms += c.ms;
            if (!c.pass) {
                ++failed;
                if (first_fail.empty()) first_fail = c.name;
            }
        }
        bool in_budget = cr.budget_s == 0.0 || ms <= cr.budget_s * 1000.0;
        bool pass = n > 0 && failed == 0 && in_budget;
        ok = ok && pass;
        std::printf("criterion %d: %s  %s (%d checks, %.0f ms)", cr.id, pass ? "PASS" : "FAIL",
                    cr.title.c_str(), n, ms);
        if (failed > 0) std::printf("  [%d failing, first: %s]", failed, first_fail.c_str());
        if (!in_budget) std::printf("  [over %.0f s budget]", cr.budget_s);
        std::printf("\n");
    }

    int code = cli_verify_exit_code();
    bool cli_ok = code == 0;
    ok = ok && cli_ok;
    std::printf("criterion 9: %s  full CLI verification exits clean (exit %d)\n",
                cli_ok ? "PASS" : "FAIL", code);

    return ok ? 0 : 1;
}
