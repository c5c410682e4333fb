#include "rdlab/flmc_terms.hpp"

#include "rdlab/info.hpp"

#include <cmath>
#include <string>

namespace rdlab {

namespace {

constexpr double kOpenMargin = 1e-9;

bool inside_open(double v, double lo, double hi) {
    return v > lo * (1.0 + kOpenMargin) && v < hi * (1.0 - kOpenMargin);
}

}  // namespace

double delta_n(double epsilon, long long n) {
    if (epsilon < 0.0 || epsilon > 1.0) throw ValidationError("delta_n: epsilon must be in [0,1]");
    if (n < 0) throw ValidationError("delta_n: n must be nonnegative");
    if (epsilon == 0.0) return 0.0;
    if (epsilon == 1.0) return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-epsilon));
}

BSet b_set(double epsilon, double sigma, double sigmaPrime) {
    if (epsilon < 0.0 || epsilon > 1.0) throw ValidationError("b_set: epsilon must be in [0,1]");
    if (sigma <= 0.0 || sigmaPrime <= 0.0) throw ValidationError("b_set: sigma terms must be positive");
    BSet b;
    const double ratio = sigma / sigmaPrime;
    b.lower = static_cast<long long>(std::ceil(ratio * ratio));
    if (b.lower < 1) b.lower = 1;
    if (epsilon == 0.0) {
        b.unbounded = true;
        b.upper = 0;
        return b;
    }
    const double hi = std::log(2.0 * epsilon) / std::log(1.0 - epsilon);
    b.upper = hi >= 1.0 ? static_cast<long long>(std::floor(hi)) : 0;
    return b;
}

void flmc_sigmas(const JointDist& pSW, double& sigma, double& sigmaPrime) {
    if (pSW.rank() != 2) throw ValidationError("flmc_sigmas: P_{S,W} must be 2-axis");
    const double pmin = pSW.min_cell();
    if (pmin <= 0.0) throw ValidationError("flmc_sigmas: P_{S,W} has a zero cell");
    const double s = pSW.axis(0).size;
    const double w = pSW.axis(1).size;
    const double mx = std::max(s, w);
    sigma = mx * std::sqrt(std::log(8.0 * mx / pmin));
    sigmaPrime = s * w / (2.0 * (s + w)) * pmin;
}

double theta_n(const JointDist& pSW, long long n, double tau) {
    if (pSW.rank() != 2) throw ValidationError("theta_n: P_{S,W} must be 2-axis");
    if (n < 1 || tau <= 0.0) throw ValidationError("theta_n: need n >= 1 and tau > 0");
    const int sSize = pSW.axis(0).size;
    const int wSize = pSW.axis(1).size;
    const double nS = sSize, nW = wSize;
    const double nd = static_cast<double>(n);
    const double logArg = 2.0 * nd * tau * tau / (nS * nS) - std::log(2.0 * nS);
    if (logArg <= 0.0)
        throw InfeasibleError("theta_n: log argument nonpositive (tau too small for n)");
    const int keepS[] = {0};
    const JointDist pS = pSW.marginal(keepS);
    double sumLogInvKernel = 0.0, sumCondEntropy = 0.0, sumLogInvPs = 0.0;
    for (int s = 0; s < sSize; ++s) {
        const double ps = pS[static_cast<std::size_t>(s)];
        if (ps <= 0.0) throw ValidationError("theta_n: P_S has a zero cell");
        sumLogInvPs += -std::log2(ps);
        for (int w = 0; w < wSize; ++w) {
            const double k = pSW[static_cast<std::size_t>(s) * static_cast<std::size_t>(wSize) +
                                 static_cast<std::size_t>(w)] /
                             ps;
            if (k <= 0.0) throw ValidationError("theta_n: P_{S,W} has a zero cell");
            sumLogInvKernel += -std::log2(k);
            sumCondEntropy += -k * std::log2(k);
        }
    }
    return std::log2(logArg) / nd +
           tau * (sumLogInvKernel / nW + sumCondEntropy / nS + (nS + nW) / nS * sumLogInvPs) +
           (nS + 1.0) / nd;
}

FlmcCorrectionTerms flmc_corrections(const ComponentPair& components, const JointDist& pSW,
                                     long long n, double tau, double dmax1, double dmax2,
                                     int u1Size, int u2Size, bool enforceRanges) {
    if (pSW.rank() != 2 || pSW.axis(0).size != components.s.size)
        throw ValidationError("flmc_corrections: P_{S,W} axes must be (S, W)");
    if (u1Size < 1 || u2Size < 1) throw ValidationError("flmc_corrections: U alphabet sizes must be >= 1");
    if (n < 1) throw ValidationError("flmc_corrections: n must be >= 1");
    if (tau <= 0.0) throw ValidationError("flmc_corrections: tau must be positive");

    FlmcCorrectionTerms t;
    t.n = n;
    t.tau = tau;
    t.epsilon = components.epsilon;
    t.sSize = pSW.axis(0).size;
    t.wSize = pSW.axis(1).size;
    t.dMax1 = dmax1;
    t.dMax2 = dmax2;

    const double pmin = pSW.min_cell();
    if (pmin <= 0.0) throw ValidationError("flmc_corrections: P_{S,W} has a zero cell");
    flmc_sigmas(pSW, t.sigma, t.sigmaPrime);

    const BSet bset = b_set(t.epsilon, t.sigma, t.sigmaPrime);
    if (enforceRanges) {
        if (bset.empty())
            throw InfeasibleError("flmc_corrections: B(epsilon) is empty");
        if (!bset.contains(n))
            throw InfeasibleError("flmc_corrections: n outside B(epsilon) = [" +
                                  std::to_string(bset.lower) + ", " +
                                  (bset.unbounded ? std::string("inf") : std::to_string(bset.upper)) +
                                  "]");
        const double lo = t.sigma / std::sqrt(static_cast<double>(n));
        if (!inside_open(tau, lo, t.sigmaPrime))
            throw InfeasibleError("flmc_corrections: tau outside (sigma/sqrt(n), sigma')");
    }

    const double nS = t.sSize;
    const double nW = t.wSize;
    const double nd = static_cast<double>(n);

    t.deltaN = delta_n(t.epsilon, n);
    t.phi = tau * (1.0 / nS + 1.0 / nW);
    t.phiPrime = 4.0 * nS * std::exp(-2.0 * nd * tau * tau / (nS * nS));
    t.pTau = pmin / (pmin + t.phiPrime + t.phi);

    t.thetaN = theta_n(pSW, n, tau);

    t.lambdaN = binary_entropy(t.pTau) + (1.0 - t.pTau) * std::log2(nW);
    t.eN = binary_entropy(t.deltaN) / nd + t.deltaN * std::log2(nW);

    t.x = 1.0 - t.pTau + t.pTau * t.deltaN + t.epsilon;
    if (t.x > 1.0) {
        if (t.x > 1.0 + 1e-12)
            throw InfeasibleError("flmc_corrections: x = 1-p(tau)+p(tau)delta_n+eps exceeds 1");
        t.x = 1.0;
    }
    const double x1 = static_cast<double>(components.f1.size());
    const double x2 = static_cast<double>(components.f2.size());
    const double alphabetProduct = x1 * x2 * static_cast<double>(u1Size) *
                                   static_cast<double>(u2Size) * nW;
    t.gammaN = 8.0 * binary_entropy(t.x) + 8.0 * t.x * std::log2(alphabetProduct);
    return t;
}

}  // namespace rdlab
