#pragma once

#include "rdlab/regions.hpp"

#include <vector>

namespace rdlab {

// Binary one-help-one source: X ~ Bern(1/2), Z ~ Bern(p), E ~ Bern(eps)
// independent; X1 = X+E, X2 = (X, Z) with index 2x+z. d1 is identically zero
// and d2 is Hamming on x+z.
DistributedSource boho_source(double p, double epsilon);

struct BohoParams {
    double p = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    double delta1 = 0.0;
    long long n = 0;
    double tau = 0.0;
};

struct BohoDerived {
    double deltaPrime = 0.0;   // min(1, delta + tau + 8 e^{-2 n tau^2 / 4})
    double deltaN = 0.0;       // 1 - (1-eps)^n
    double thetaPrimeN = 0.0;  // finite-blocklength rate loss, bits
};

// Admissible parameter ranges of the closed-form bound; the thrown message
// names the range that failed.
void boho_validate(const BohoParams& params);

BohoDerived boho_derived(const BohoParams& params);

// (1 - h_b(delta) + theta'_n, h_b(p * delta') - h_b(delta1), 0,
//  delta1 + delta_n (delta' + (eps/delta_n) * delta')).
RDTuple boho_flmc_corner(const BohoParams& params);

// The eps = 0 reference corner (1 - h_b(delta), h_b(p*delta) - h_b(delta1), 0, delta1).
RDTuple boho_cc_corner(double p, double delta, double delta1);

// Euclidean distance between the finite-blocklength corner and its eps = 0
// reference at matched (delta, delta1).
double boho_gap(const BohoParams& params);

struct BohoGrids {
    int deltaPoints = 64;
    int nPoints = 32;
    int tauPoints = 16;
    int delta1Points = 64;
    double deltaLo = 0.01;
    double deltaHi = 0.49;
};

struct BohoProvenance {
    double delta = 0.0, delta1 = 0.0;
    long long n = 0;
    double tau = 0.0;
};

struct BohoSweep {
    RegionBoundary boundary;
    std::vector<BohoProvenance> prov;  // indexed by BoundaryPoint::provenanceId
};

// Sweeps the admissible (delta, n, tau, delta1) grids, keeps corners meeting
// D2 <= d2max, and assembles the convex boundary. eps = 0 reduces to the
// closed-form reference sweep. The n ladder uses a fixed geometric ratio
// anchored at each delta's lower end, so a smaller eps sweeps a superset of a
// larger one's grid.
BohoSweep boho_region_sweep(double p, double epsilon, double d2max,
                            const BohoGrids& grids = {});

}  // namespace rdlab
