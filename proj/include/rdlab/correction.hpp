#pragma once

#include "rdlab/quantizer.hpp"

namespace rdlab {

// Auxiliary randomization T over {0, 1, ..., |W|} (index 0 keeps the
// quantizer output, index t >= 1 overwrites with symbol t-1). Built so the
// corrected average joint type of (S, W') reproduces the target exactly.
struct CorrectionChannel {
    CondDist pTgivenS;          // S -> T, |T| = |W| + 1
    std::vector<double> gamma;  // measured average type minus target, S x W row-major
    JointDist averageType;      // measured average joint type of (S, W)
    JointDist correctedJoint;   // average joint of (S, W') after correction
    bool exact = false;
    double maxResidual = 0.0;  // max cell |corrected - target|

    int w_size() const { return pTgivenS.to_axes()[0].size - 1; }
};

// Average joint type of (S^n, Q(S^n)) under the product source law, exact by
// enumeration over S^n.
JointDist exact_average_type(const QuantizerCodebook& q, const JointDist& pS,
                             std::uint64_t cap = kEnumerationCap);

// Sampled estimate from `samples` independent blocks.
JointDist sampled_average_type(const QuantizerCodebook& q, const JointDist& pS, long long samples,
                               std::uint64_t seed);

// Builds the correction channel from the (exact or estimated) average type.
// Exact mode enforces the exactness postcondition as a hard gate; sampled mode
// reports the residual measured on an independent second batch instead.
CorrectionChannel build_correction(const QuantizerCodebook& q, const JointDist& pS,
                                   bool exactMode, long long samples = 0, std::uint64_t seed = 0,
                                   std::uint64_t cap = kEnumerationCap);

struct CorrectionRate {
    double hT = 0.0;           // H(T) in bits under pS and the channel
    double lambdaBound = 0.0;  // h_b(p(tau)) + (1 - p(tau)) log2 |W|
    double p0 = 0.0;           // measured P(T = 0)
    bool boundApplies = false;  // p0 >= p(tau) and p(tau) >= 1/2
    bool holds = false;
};

CorrectionRate correction_rate(const CorrectionChannel& c, const JointDist& pS, double pTau);

}  // namespace rdlab
