#pragma once

#include "rdlab/source.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rdlab {

struct CheckRow {
    std::string name;
    bool pass = false;
    double margin = 0.0;  // smallest slack observed; negative means violated
    std::string detail;
};

struct CheckSuiteResult {
    std::string suite;
    std::vector<CheckRow> rows;
    bool all_pass() const;
    std::string to_table() const;
};

// Entropy and mutual-information continuity bounds over random distribution
// pairs, per alphabet size in {2, 4, 8}.
CheckSuiteResult run_continuity_suite(int pairsPerSize = 10000, std::uint64_t seed = 20240601);

// Exhaustive small-n verification of the typical-set cardinality, complement
// probability, composition, and conditional-count bounds.
CheckSuiteResult run_typicality_suite();

// Common-part region contained in the finite-blocklength region evaluated at
// a large first-layer blocklength, on a shared random spec grid.
CheckSuiteResult run_containment_suite(int specs = 200, std::uint64_t seed = 7,
                                       long long n = 1000000000000000000LL, double tau = 0.0,
                                       double slack = 1e-3);

// The 3x3 block-structured source used by the containment checks (nontrivial
// common part: {0,1} vs {2}).
DistributedSource block_diag_source_3x3();

}  // namespace rdlab
