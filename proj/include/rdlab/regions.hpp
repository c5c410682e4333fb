#pragma once

#include "rdlab/flmc_terms.hpp"
#include "rdlab/source.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rdlab {

struct RDTuple {
    double r1 = 0.0, r2 = 0.0;  // bits/sample
    double d1 = 0.0, d2 = 0.0;  // distortion units
};

// Each single-letter bound set is a polyhedron with (at most) two extreme
// corners; both are reported so region assembly can consume the full face.
struct CornerPair {
    RDTuple lowR1;  // R1 at its individual bound, excess on R2
    RDTuple lowR2;  // R2 at its individual bound, excess on R1
};

// Single-letter design variables of the CC/FLMC bound sets.
struct FlmcCodingSpec {
    ComponentPair components;
    CondDist pW;   // S -> W
    CondDist pU1;  // (X1, W) -> U1
    CondDist pU2;  // (X2, W) -> U2
    std::vector<int> g1;  // (w, u1, u2) row-major -> X1-hat
    std::vector<int> g2;  // (w, u1, u2) row-major -> X2-hat

    FlmcCodingSpec(ComponentPair c, CondDist w, CondDist u1, CondDist u2, std::vector<int> gg1,
                   std::vector<int> gg2, bool enforceCardinalityCaps = true);
};

// Joint P_{X1,X2} P_{W|S1} P_{U1|X1,W} P_{U2|X2,W} over axes (X1,X2,W,U1,U2).
JointDist build_coding_joint(const DistributedSource& src, const FlmcCodingSpec& spec);

// Marginal of (S1 = f1(X1), W) under the coding joint.
JointDist build_psw(const DistributedSource& src, const FlmcCodingSpec& spec);

// Reconstruction maps minimizing expected distortion cell by cell under the
// coding joint; shared by the CC and FLMC evaluations of one spec.
void optimal_g(const DistributedSource& src, const JointDist& joint5, std::vector<int>& g1,
               std::vector<int>& g2);

CornerPair cc_alpha(const DistributedSource& src, const FlmcCodingSpec& spec);

CornerPair flmc_alpha(const DistributedSource& src, const FlmcCodingSpec& spec, long long n,
                      double tau, bool enforceRanges = true,
                      FlmcCorrectionTerms* termsOut = nullptr);

// Berger-Tung with side-information; kernels (X1,Y1)->U1 and (X2,Y2)->U2,
// reconstructions over (u1, u2, y1, y2) row-major.
CornerPair btsi_alpha(const SourceWithSideInfo& src, const CondDist& pU1, const CondDist& pU2,
                      const std::vector<int>& g1, const std::vector<int>& g2);

struct McmlConditionReport {
    double cond1 = 0.0;  // max residual, factorization of (W'1, U1) given (X1, X2)
    double cond2 = 0.0;  // max residual, P'(U2 | X2, W2) vs reference kernel
    double cond3 = 0.0;  // shortfall of P'(W'1=W2, S1=S2) below p(tau)(1-delta_n)
    double cond4 = 0.0;  // max residual, U1 - (X1,W'1) - (X2,W2) - U2 Markov factorization
    double cond5 = 0.0;  // max residual, (W'1,W2) - (S1,S2) - (X1,X2) Markov
    double worst() const;
    bool ok(double tol) const { return worst() <= tol; }
};

// Multi-letter bound set evaluated on an explicit joint over
// (X1, X2, W'1, W2, U1, U2); the induced-joint consistency conditions are
// checked, not assumed.
CornerPair mcml_alpha(const DistributedSource& src, const ComponentPair& components,
                      const JointDist& pP6, const CondDist& pW, const CondDist& pU1,
                      const CondDist& pU2, const FlmcCorrectionTerms& corrections,
                      const std::vector<int>& g1, const std::vector<int>& g2,
                      McmlConditionReport* report = nullptr, double condTol = 1e-9);

struct BoundaryPoint {
    double r1 = 0.0, r2 = 0.0;
    long long provenanceId = -1;
};

struct RegionBoundary {
    double fixedD1 = 0.0, fixedD2 = 0.0;
    std::vector<BoundaryPoint> points;  // sorted by r1, mutually non-dominated
    bool hulled = false;
};

struct TaggedCorner {
    RDTuple rd;
    long long provenanceId = -1;
};

// Distortion-filters, dominance-filters, and optionally convex-hulls (time
// sharing) a cloud of corners at fixed distortions.
RegionBoundary assemble_region(const std::vector<TaggedCorner>& corners, double fixedD1,
                               double fixedD2, bool hull);

struct ContainmentResult {
    bool contains = false;
    double maxViolation = 0.0;  // worst one-sided Chebyshev shortfall beyond slack
};

// True iff every inner boundary point is dominated by outer (with time
// sharing along outer's polyline) within slack in both coordinates.
ContainmentResult region_contains(const RegionBoundary& outer, const RegionBoundary& inner,
                                  double slack);

}  // namespace rdlab
