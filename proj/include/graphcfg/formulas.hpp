#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphcfg/graph.hpp"
#include "graphcfg/invariants.hpp"

namespace graphcfg {

// N labeled tokens on the radial tree with K branches (a K-spoke star).
struct RadialParams {
    uint32_t n = 1;
    uint32_t k = 3;
};

// The star with K spokes: center "c", leaves "l1".."lK", edges "e1".."eK".
Graph radial_tree(uint32_t k);

// Q(N,K) = 1 + (NK - 2N - K + 1) (N+K-2)! / (K-1)!. Equals b_1 of the token
// complex, which is connected for K >= 3.
bigint rank_Q(const RadialParams& p);
// 1 - Q(N,K).
bigint euler_closed(const RadialParams& p);
// E(N,K) = (N+K-3)! / (K-2)!; the edge-type count entering the recursion.
bigint count_E(const RadialParams& p);
// Same value as the rising product prod_{i=1..N-1} (K-2+i); the independent
// route used to cross-check count_E.
bigint count_E_product(const RadialParams& p);
// chi(N,K) = chi(N,K-1) + N [chi(N-1,K) - E(N,K)], seeded with chi(1,K) = 1
// (one connected contractible piece) and chi(N,2) = N!.
bigint euler_recursive(const RadialParams& p);

// All k-tuples of nonnegative integers summing to n, lexicographically
// ascending; there are C(n+k-1, k-1) of them.
std::vector<std::vector<uint32_t>> enumerate_distributions(uint32_t n, uint32_t k);

// Component-count identity at an essential vertex p of a tree: the slice of
// cells whose given coordinate sits at p matches tokens distributed over the
// complement of p's closed star, with multinomial weights for the labelings.
struct SigmaReport {
    std::string vertex;
    uint32_t tokens = 0;
    uint32_t factor = 0;
    long long sigma_complex = 0;      // components, summed over the pinned token
    long long sigma_formula = 0;      // N * sum over (N-1)-distributions
    long long complement_complex = 0; // components of the closed-star complement
    long long complement_formula = 0; // sum over N-distributions
    bool pass = false;
};
SigmaReport verify_sigma_decomposition(const Graph& g, const std::string& p, uint32_t tokens,
                                       uint32_t factor);

struct FormulaRow {
    uint32_t n = 0;
    uint32_t k = 0;
    bigint e;
    bigint chi_closed;
    bigint chi_recursive;
    bigint q;
    // b_1 of the built complex when it fits under cell_budget, for the
    // formula-vs-complex columns.
    std::optional<long long> b1_complex;
};
std::vector<FormulaRow> formula_table(uint32_t nmax, uint32_t kmax,
                                      uint64_t cell_budget = 1000000);
std::string table_to_text(const std::vector<FormulaRow>& rows);
std::string table_to_csv(const std::vector<FormulaRow>& rows);

} // namespace graphcfg
