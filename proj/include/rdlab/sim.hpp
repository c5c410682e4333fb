#pragma once

#include "rdlab/components.hpp"
#include "rdlab/correction.hpp"
#include "rdlab/quantizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rdlab {

// Upper quantile of the standard normal: P(Z > z) = alpha.
double normal_upper_quantile(double alpha);

struct InterleaveResult {
    JointDist empirical4;      // (X1, X2, W'1, W2) pooled over all cells
    double probAgreeWS = 0.0;  // empirical P(W'1 = W2, S1 = S2)
    long long cells = 0;       // n * m
    double maxRowZ = 0.0;      // worst per-row vs pooled cell z-score
    double rowZCritical = 0.0;
    bool rowInvariancePass = false;
    double shuffleP = 0.0;  // exchangeability permutation test p-value, row 0
    bool shufflePass = false;
};

// Simulates m blocks of the two-chain construction: quantize both component
// chains with the shared codebook, apply the T-correction to the first chain,
// permute each block uniformly, and pool the empirical joint.
InterleaveResult interleave_and_induce(const QuantizerCodebook& q, const CorrectionChannel& c,
                                       const DistributedSource& src,
                                       const ComponentPair& components, long long m,
                                       std::uint64_t seed);

// The induced single-letter joint over (X1, X2, W'1, W2), exact by
// enumerating (S1^n, S2^n); also returns P'(W'1 = W2, S1 = S2).
JointDist exact_induced_joint4(const QuantizerCodebook& q, const CorrectionChannel& c,
                               const DistributedSource& src, const ComponentPair& components,
                               double* agreeOut = nullptr,
                               std::uint64_t cap = kEnumerationCap);

// Extends a 4-axis induced joint with the test channels U1|(X1,W'1), U2|(X2,W2).
JointDist extend_with_test_channels(const JointDist& p4, const CondDist& pU1, const CondDist& pU2);

struct VariationalBoundResult {
    double measuredV = 0.0;
    double bound = 0.0;  // 1 - p(tau) + p(tau) delta_n + eps
    double margin = 0.0;
    bool pass = false;
};

// V(P', Q) against the variational bound, where Q couples W'1 = W2 = W under
// the reference kernels.
VariationalBoundResult check_variational_bound(const JointDist& pPrime6, const DistributedSource& src,
                          const ComponentPair& components, const CondDist& pW,
                          const CondDist& pU1, const CondDist& pU2, double epsilon, double pTau,
                          double deltaN);

struct BohoSimConfig {
    double p = 0.3;
    double epsilon = 1e-3;
    int n = 8;
    int theta = 6;       // first-layer codebook size
    double delta = 0.2;  // first-layer test-channel crossover (codeword sampling)
    double delta1 = 0.05;  // idealized second-layer quantization noise
    double tau = 0.1;      // typical-set width for codeword sampling, tauHat = 4 tau
    long long m = 100000;
    int trials = 1;
    std::uint64_t masterSeed = 1;
    int threads = 1;
};

struct BohoTrialStats {
    double d2 = 0.0;            // measured distortion of the second source
    double deltaPrime1 = 0.0;   // first-layer distortion at encoder 1, mean(X1 xor V)
    double deltaPrime2 = 0.0;   // first-layer distortion at encoder 2, mean(X xor Vhat)
    double stildeMean = 0.0;    // mean of the interleaved difference chain
    double coverFailFreq = 0.0;  // fraction of blocks with type deviation > tau
    double vDisagree = 0.0;      // mean(V != Vhat) per cell
};

struct BohoSimReport {
    BohoSimConfig config;
    std::vector<BohoTrialStats> perTrial;
    BohoTrialStats pooled;

    double rateR1 = 0.0;        // log2(theta)/n
    double rateR2 = 0.0;        // h_b(p * delta'_meas) - h_b(delta1), clamped at 0
    double deltaN = 0.0;        // 1 - (1-eps)^n
    double d2Bound = 0.0;       // delta1 + delta_n (delta'2 + (eps/delta_n) * delta'1)
    double d2Radius = 0.0;      // Hoeffding 99% radius for the pooled mean
    bool d2GatePass = false;    // pooled d2 <= bound + 3 radii
    double fin1Deviation = 0.0;  // |mean(Stilde) - p * delta'2_meas|
    double fin1Radius = 0.0;     // 99% normal radius sqrt(p(1-p)/N)
    bool fin1GatePass = false;
    bool hardGatePass = false;

    std::string to_text() const;
    std::string per_trial_csv() const;
};

BohoSimReport boho_end_to_end(const BohoSimConfig& config);

}  // namespace rdlab
