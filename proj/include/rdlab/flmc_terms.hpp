#pragma once

#include "rdlab/components.hpp"
#include "rdlab/dist.hpp"

#include <cstdint>

namespace rdlab {

// Admissible first-layer blocklengths: (sigma/sigma')^2 <= n <= log(2eps)/log(1-eps).
// For eps = 0 the interval is unbounded above; it is empty whenever the upper
// end drops below the lower (always the case for eps > 1/3).
struct BSet {
    long long lower = 1;
    long long upper = 0;
    bool unbounded = false;

    bool empty() const { return !unbounded && upper < lower; }
    bool contains(long long n) const { return n >= lower && (unbounded || n <= upper); }
};

BSet b_set(double epsilon, double sigma, double sigmaPrime);

// delta_k = 1 - (1-eps)^k, computed stably for tiny eps and huge k.
double delta_n(double epsilon, long long n);

// Every finite-blocklength correction quantity of the FLMC bound set, plus the
// quantizer guarantee parameters (phi, phi').
struct FlmcCorrectionTerms {
    long long n = 0;
    double tau = 0.0;
    double epsilon = 0.0;
    int sSize = 0, wSize = 0;

    double sigma = 0.0, sigmaPrime = 0.0;
    double deltaN = 0.0;
    double phi = 0.0, phiPrime = 0.0;
    double pTau = 0.0;
    double thetaN = 0.0;   // bits
    double gammaN = 0.0;   // bits
    double lambdaN = 0.0;  // bits
    double eN = 0.0;       // bits
    double x = 0.0;        // 1 - p(tau) + p(tau) deltaN + epsilon
    double dMax1 = 0.0, dMax2 = 0.0;
};

// sigma and sigma' for a joint P_{S,W}; requires strictly positive cells.
void flmc_sigmas(const JointDist& pSW, double& sigma, double& sigmaPrime);

// Finite-blocklength quantization rate loss theta_n(tau) for a joint P_{S,W};
// outer log base 2, inner ln natural.
double theta_n(const JointDist& pSW, long long n, double tau);

// Evaluates every finite-blocklength term of the bound set at (n, tau). uSizes and the component
// maps' domains feed the Gamma alphabet factor. With enforceRanges set, n must
// lie in B(epsilon) and tau strictly inside (sigma/sqrt(n), sigma'), open ends
// enforced with relative margin 1e-9.
FlmcCorrectionTerms flmc_corrections(const ComponentPair& components, const JointDist& pSW,
                                     long long n, double tau, double dmax1, double dmax2,
                                     int u1Size, int u2Size, bool enforceRanges = true);

}  // namespace rdlab
