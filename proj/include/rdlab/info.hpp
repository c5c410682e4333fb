#pragma once

#include "rdlab/dist.hpp"

#include <span>

namespace rdlab {

// All information measures are base-2 ("bits") with 0*log 0 = 0.

double binary_entropy(double p);

// a*b = a(1-b) + b(1-a), the crossover of cascaded binary symmetric channels.
double binary_convolve(double a, double b);

// Shannon entropy of the marginal on the given axes.
double entropy(const JointDist& d, std::span<const int> axes);

// I(a;b) = H(a) + H(b) - H(a,b); tiny negatives from roundoff clamp to 0.
double mutual_info(const JointDist& d, std::span<const int> a, std::span<const int> b);

// I(a;b|c) = H(a,c) + H(b,c) - H(a,b,c) - H(c).
double cond_mutual_info(const JointDist& d, std::span<const int> a, std::span<const int> b,
                        std::span<const int> c);

// Half the L1 distance between two pmfs on identical axes.
double variational_distance(const JointDist& p, const JointDist& q);

// |H(Q)-H(P)| <= h_b(v) + v log2(|A|-1) whenever V(P,Q) <= v.
double entropy_continuity_bound(double v, int alphabetSize);

struct MiContinuityBounds {
    double pairBound;  // 4 (h_b(v) + v log2 |A|)
    double condBound;  // 8 (h_b(v) + v log2 |A|)
};
MiContinuityBounds mi_continuity_bounds(double v, int alphabetSize);

}  // namespace rdlab
