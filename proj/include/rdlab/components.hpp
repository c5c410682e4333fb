#pragma once

#include "rdlab/source.hpp"

#include <cstdint>
#include <vector>

namespace rdlab {

// A pair of per-terminal functions onto a shared alphabet together with the
// probability that they disagree under the source.
struct ComponentPair {
    Alphabet s;
    std::vector<int> f1;  // |X1| entries into [0, |S|)
    std::vector<int> f2;  // |X2| entries into [0, |S|)
    double epsilon = 0.0;

    ComponentPair(Alphabet sAlpha, std::vector<int> map1, std::vector<int> map2, double eps);
};

// Exact P(f1(X1) != f2(X2)) under the source pmf.
double epsilon_of(const DistributedSource& src, const std::vector<int>& f1,
                  const std::vector<int>& f2, int sSize);

struct GkResult {
    ComponentPair pair;   // epsilon is exactly 0
    double k_bits = 0.0;  // entropy of the maximal common function
};

// Maximal common function via connected components of the bipartite support
// graph. Cells below supportTol count as unsupported; the common part is
// fragile under perturbation, so the threshold is explicit.
GkResult gk_common_part(const DistributedSource& src, double supportTol = 1e-15);

// All (f1, f2) pairs with shared alphabet size <= maxS and disagreement
// probability <= maxEps, deduplicated up to relabeling of S (labels
// canonicalized by first occurrence in f1, then f2).
std::vector<ComponentPair> enumerate_component_pairs(const DistributedSource& src, int maxS,
                                                     double maxEps,
                                                     std::uint64_t cap = 1000000);

}  // namespace rdlab
