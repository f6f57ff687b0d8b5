#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphcfg/complex.hpp"

namespace graphcfg {

using bigint = boost::multiprecision::cpp_int;

// Large default field prime so accidental modular rank drop is negligible.
inline constexpr int64_t default_prime = 1073741789;

long long euler_characteristic(const CubeComplex& c);

// Union-find over the 1-skeleton; equals b_0.
long long connected_components(const CubeComplex& c);

// Rank over GF(prime) by sparse elimination with Markowitz-style pivoting
// (fewest-nonzeros column, then fewest-nonzeros row). Deterministic.
size_t gfp_rank(const SparseMatrix& m, int64_t prime);

// b_d = f_d - rank(bd_d) - rank(bd_{d+1}) over GF(prime). b_0 is cross-checked
// against union-find; a mismatch (modular rank drop) raises error rather than
// being hidden. Per-dimension ranks may run concurrently; results are
// worker-count independent.
std::vector<long long> betti_numbers(const CubeComplex& c, int64_t prime = default_prime);

struct SmithResult {
    size_t rank = 0;
    // Nontrivial invariant factors (> 1), each dividing the next.
    std::vector<bigint> torsion;
};
// Exact integer Smith normal form; refuses matrices wider than column_cap.
SmithResult smith_normal_form(const SparseMatrix& m, size_t column_cap = 20000);

struct IntegralHomology {
    long long rank = 0;
    std::vector<bigint> torsion;
};
// H_d over the integers: rank from exact boundary ranks, torsion from the
// invariant factors of bd_{d+1}.
IntegralHomology integral_homology(const CubeComplex& c, uint32_t d, size_t column_cap = 20000);

// Exact (Smith) ranks equal GF(prime) ranks in every dimension. The rational
// verification pass for small complexes.
bool rational_ranks_agree(const CubeComplex& c, int64_t prime = default_prime,
                          size_t column_cap = 20000);

struct InvariantReport {
    std::vector<long long> f_vector;
    long long euler = 0;
    std::vector<long long> betti;
    // Per homology dimension: decimal invariant factors, or nullopt when the
    // Smith computation was skipped (size cap).
    std::vector<std::optional<std::vector<std::string>>> torsion;
    int64_t prime = default_prime;
};

InvariantReport invariant_report(const CubeComplex& c, int64_t prime = default_prime,
                                 bool with_torsion = true, size_t snf_cap = 20000);
std::string report_to_json(const InvariantReport& r);

} // namespace graphcfg
