#include "rdlab/boho.hpp"

#include "rdlab/flmc_terms.hpp"
#include "rdlab/info.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace rdlab {

DistributedSource boho_source(double p, double epsilon) {
    if (p < 0.0 || p >= 0.5) throw ValidationError("boho_source: p must be in [0, 1/2)");
    if (epsilon < 0.0 || epsilon >= 0.5) throw ValidationError("boho_source: eps must be in [0, 1/2)");
    Alphabet a1(2);
    Alphabet a2(4, {"00", "01", "10", "11"});  // (x, z) as 2x + z
    std::vector<double> pmf(8, 0.0);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x = 0; x < 2; ++x)
            for (int z = 0; z < 2; ++z) {
                const double pe = (x1 ^ x) ? epsilon : 1.0 - epsilon;
                const double pz = z ? p : 1.0 - p;
                pmf[static_cast<std::size_t>(x1) * 4 + static_cast<std::size_t>(2 * x + z)] =
                    0.5 * pz * pe;
            }
    std::vector<double> d1(4, 0.0);
    std::vector<double> d2(16, 0.0);
    for (int x2 = 0; x2 < 4; ++x2)
        for (int xh2 = 0; xh2 < 4; ++xh2) {
            const int sum = ((x2 >> 1) ^ (x2 & 1));
            const int sumHat = ((xh2 >> 1) ^ (xh2 & 1));
            d2[static_cast<std::size_t>(x2) * 4 + static_cast<std::size_t>(xh2)] =
                (sum != sumHat) ? 1.0 : 0.0;
        }
    return DistributedSource(std::move(a1), std::move(a2),
                             JointDist({Alphabet(2), Alphabet(4)}, std::move(pmf)), std::move(d1),
                             std::move(d2));
}

namespace {

double boho_n_lower(double delta) { return 64.0 / (delta * delta) * std::log(32.0 / delta); }

// log(2 eps) / log(1 - eps); +inf for eps = 0.
double boho_n_upper(double epsilon) {
    if (epsilon == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(2.0 * epsilon) / std::log(1.0 - epsilon);
}

double boho_tau_lower(double delta, long long n) {
    return 2.0 * std::sqrt(std::log(32.0 / delta) / static_cast<double>(n));
}

}  // namespace

void boho_validate(const BohoParams& q) {
    if (q.p <= 0.0 || q.p >= 0.5) throw ValidationError("boho params: p outside (0, 1/2)");
    if (q.epsilon < 0.0 || q.epsilon >= 0.5)
        throw ValidationError("boho params: eps outside [0, 1/2)");
    if (q.delta <= 0.0 || q.delta >= 0.5)
        throw ValidationError("boho params: delta outside (0, 1/2)");
    const double nLo = boho_n_lower(q.delta);
    const double nHi = boho_n_upper(q.epsilon);
    if (static_cast<double>(q.n) <= nLo)
        throw InfeasibleError("boho params: n below 64/delta^2 ln(32/delta) = " +
                              std::to_string(nLo));
    if (static_cast<double>(q.n) >= nHi)
        throw InfeasibleError("boho params: n above log(2 eps)/log(1-eps) = " +
                              std::to_string(nHi));
    const double tLo = boho_tau_lower(q.delta, q.n);
    const double tHi = q.delta / 4.0;
    if (q.tau <= tLo || q.tau >= tHi)
        throw InfeasibleError("boho params: tau outside (2 sqrt(ln(32/delta)/n), delta/4)");
    // delta1's upper end depends on delta'; checked in boho_derived callers.
}

BohoDerived boho_derived(const BohoParams& q) {
    boho_validate(q);
    BohoDerived d;
    const double nd = static_cast<double>(q.n);
    d.deltaPrime = std::min(1.0, q.delta + q.tau + 8.0 * std::exp(-2.0 * nd * q.tau * q.tau / 4.0));
    d.deltaN = delta_n(q.epsilon, q.n);
    const double logArg = nd * q.tau * q.tau / 4.0 - std::log(4.0);
    if (logArg <= 0.0)
        throw InfeasibleError("boho params: theta'_n log argument nonpositive");
    d.thetaPrimeN = std::log2(logArg) / nd +
                    q.tau * (4.0 + binary_entropy(q.delta) -
                             std::log2(q.delta * (1.0 - q.delta))) +
                    3.0 / nd;
    if (q.delta1 <= 0.0 || q.delta1 >= binary_convolve(q.p, d.deltaPrime))
        throw InfeasibleError("boho params: delta1 outside (0, p * delta')");
    return d;
}

RDTuple boho_flmc_corner(const BohoParams& q) {
    const BohoDerived d = boho_derived(q);
    const double r1 = 1.0 - binary_entropy(q.delta) + d.thetaPrimeN;
    const double r2 = std::max(0.0, binary_entropy(binary_convolve(q.p, d.deltaPrime)) -
                                        binary_entropy(q.delta1));
    double d2 = q.delta1;
    if (q.epsilon > 0.0) {
        // delta_n >= eps for n >= 1, so eps/delta_n is a valid crossover.
        const double ratio = q.epsilon / d.deltaN;
        d2 += d.deltaN * (d.deltaPrime + binary_convolve(ratio, d.deltaPrime));
    }
    return {r1, r2, 0.0, d2};
}

RDTuple boho_cc_corner(double p, double delta, double delta1) {
    if (p <= 0.0 || p >= 0.5) throw ValidationError("boho_cc_corner: p outside (0, 1/2)");
    if (delta1 < 0.0 || delta1 > delta || delta > 1.0)
        throw ValidationError("boho_cc_corner: need 0 <= delta1 <= delta <= 1");
    const double r1 = 1.0 - binary_entropy(delta);
    const double r2 =
        std::max(0.0, binary_entropy(binary_convolve(p, delta)) - binary_entropy(delta1));
    return {r1, r2, 0.0, delta1};
}

double boho_gap(const BohoParams& q) {
    const BohoDerived d = boho_derived(q);
    const double hbGap = binary_entropy(binary_convolve(q.p, d.deltaPrime)) -
                         binary_entropy(binary_convolve(q.p, q.delta));
    double lossTerm = 0.0;
    if (q.epsilon > 0.0)
        lossTerm =
            d.deltaN * (d.deltaPrime + binary_convolve(q.epsilon / d.deltaN, d.deltaPrime));
    return std::sqrt(d.thetaPrimeN * d.thetaPrimeN + hbGap * hbGap + lossTerm * lossTerm);
}

namespace {

std::vector<double> geomspace(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
        out.push_back(std::exp(la + t * (lb - la)));
    }
    return out;
}

}  // namespace

BohoSweep boho_region_sweep(double p, double epsilon, double d2max, const BohoGrids& grids) {
    if (p <= 0.0 || p >= 0.5) throw ValidationError("boho_region_sweep: p outside (0, 1/2)");
    if (epsilon < 0.0 || epsilon >= 0.5)
        throw ValidationError("boho_region_sweep: eps outside [0, 1/2)");
    if (d2max <= 0.0) throw ValidationError("boho_region_sweep: d2max must be positive");

    BohoSweep sweep;
    std::vector<TaggedCorner> corners;
    std::map<std::string, long long> blockers;

    const auto deltas = geomspace(grids.deltaLo, grids.deltaHi, grids.deltaPoints);

    if (epsilon == 0.0) {
        // Common-part reference path, the n -> infinity limit of the
        // finite-blocklength corners: (1-h_b(delta), h_b(p*delta)-h_b(delta1),
        // 0, delta1) with delta1 free in (0, p*delta); restricting delta1 to
        // delta would drop the non-dominated large-R1 face.
        for (double delta : deltas) {
            const double hi =
                std::min({binary_convolve(p, delta) * (1.0 - 1e-9), d2max, 0.5});
            for (int j = 0; j < grids.delta1Points; ++j) {
                const double delta1 =
                    hi * static_cast<double>(j + 1) / static_cast<double>(grids.delta1Points);
                const double r2 = std::max(0.0, binary_entropy(binary_convolve(p, delta)) -
                                                    binary_entropy(delta1));
                const RDTuple rd{1.0 - binary_entropy(delta), r2, 0.0, delta1};
                if (rd.d2 > d2max) continue;
                sweep.prov.push_back({delta, delta1, 0, 0.0});
                corners.push_back({rd, static_cast<long long>(sweep.prov.size()) - 1});
            }
        }
        if (corners.empty()) throw InfeasibleError("boho_region_sweep: empty sweep at eps = 0");
        sweep.boundary = assemble_region(corners, 0.0, d2max, true);
        return sweep;
    }

    const double nHi = boho_n_upper(epsilon);
    // Fixed geometric n ladder (three points per decade) anchored at each
    // delta's lower end; a bigger admissible window extends the same ladder.
    const double ladderRatio = std::pow(10.0, 1.0 / 3.0);

    for (double delta : deltas) {
        const double nLo = boho_n_lower(delta);
        if (nLo + 1.0 >= nHi) {
            ++blockers["no admissible n: upper end log(2eps)/log(1-eps) <= lower end 64/delta^2 ln(32/delta)"];
            continue;
        }
        long long prevN = 0;
        double ladder = nLo + 1.0;
        for (int k = 0; k < grids.nPoints; ++k, ladder *= ladderRatio) {
            const auto n = static_cast<long long>(std::ceil(ladder));
            if (static_cast<double>(n) >= nHi) break;
            if (n == prevN) continue;
            prevN = n;

            const double tLo = boho_tau_lower(delta, n);
            const double tHi = delta / 4.0;
            if (tLo >= tHi) {
                ++blockers["tau interval empty: 2 sqrt(ln(32/delta)/n) >= delta/4"];
                continue;
            }
            // Log spacing: theta'_n is increasing in tau, so the useful values
            // hug the lower end, which can sit many decades below delta/4.
            const double tauRatio = tHi / tLo;
            for (int it = 0; it < grids.tauPoints; ++it) {
                const double tau =
                    tLo * std::pow(tauRatio, static_cast<double>(it + 1) /
                                                 static_cast<double>(grids.tauPoints + 1));
                BohoParams q{p, epsilon, delta, 0.0, n, tau};
                // Probe the derived quantities with a provisional delta1.
                q.delta1 = 1e-9;
                BohoDerived d;
                try {
                    d = boho_derived(q);
                } catch (const Error&) {
                    ++blockers["derived-quantity range failure"];
                    continue;
                }
                const double pen =
                    d.deltaN * (d.deltaPrime + binary_convolve(epsilon / d.deltaN, d.deltaPrime));
                const double budget = d2max - pen;
                if (budget <= 0.0) {
                    ++blockers["distortion budget below correction penalty delta_n (delta' + (eps/delta_n)*delta')"];
                    continue;
                }
                const double convCap = binary_convolve(p, d.deltaPrime) * (1.0 - 1e-9);
                const double hi = std::min({budget, convCap, 0.5});
                RDTuple bestRd;
                double bestDelta1 = 0.0;
                bool haveBest = false;
                // All delta1 corners of one (delta, n, tau) share r1; only the
                // lowest r2 can reach the boundary.
                for (int j = 0; j < grids.delta1Points; ++j) {
                    const double delta1 = hi * static_cast<double>(j + 1) /
                                          static_cast<double>(grids.delta1Points);
                    q.delta1 = delta1;
                    const RDTuple rd = boho_flmc_corner(q);
                    if (rd.d2 > d2max) continue;
                    if (!haveBest || rd.r2 < bestRd.r2) {
                        bestRd = rd;
                        bestDelta1 = delta1;
                        haveBest = true;
                    }
                }
                if (haveBest) {
                    sweep.prov.push_back({delta, bestDelta1, n, tau});
                    corners.push_back({bestRd, static_cast<long long>(sweep.prov.size()) - 1});
                }
            }
        }
    }

    if (corners.empty()) {
        std::string reason = "boho_region_sweep: empty admissible set";
        long long worst = -1;
        for (const auto& [msg, count] : blockers)
            if (count > worst) {
                worst = count;
                reason = "boho_region_sweep: empty admissible set; binding constraint: " + msg;
            }
        throw InfeasibleError(reason);
    }
    sweep.boundary = assemble_region(corners, 0.0, d2max, true);
    return sweep;
}

}  // namespace rdlab
