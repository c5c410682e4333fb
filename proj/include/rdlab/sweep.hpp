#pragma once

#include "rdlab/regions.hpp"

#include <string>
#include <vector>

namespace rdlab {

struct SpecSampleOptions {
    int wSize = 2;
    int u1Size = 2;
    int u2Size = 2;
    double kernelFloor = 0.2;  // uniform mixture weight keeping kernels away from zero
};

// Random Dirichlet-style kernels mixed with uniform mass, with the
// reconstruction maps chosen optimally for the sampled joint.
FlmcCodingSpec sample_coding_spec(const DistributedSource& src, const ComponentPair& components,
                                  const SpecSampleOptions& opts, StreamRng& rng);

struct RegionProvenance {
    std::string scheme;
    double epsilon = 0.0;
    long long n = 0;
    double tau = 0.0;
    long long specIndex = -1;
};

struct RegionRun {
    RegionBoundary boundary;
    std::vector<RegionProvenance> prov;  // indexed by BoundaryPoint::provenanceId
    std::vector<TaggedCorner> corners;   // pre-assembly cloud (both polyhedron corners)
};

struct RegionRunOptions {
    int specs = 200;
    std::uint64_t seed = 1;
    SpecSampleOptions sample;
    double fixedD1 = 1.0, fixedD2 = 1.0;
    bool hull = true;
    bool swapSymmetrize = false;
    long long n = 0;    // flmc/mcml only
    double tau = 0.0;   // flmc/mcml only
    bool enforceRanges = true;
    int quantizerN = 6;  // mcml first-layer blocklength for the induced joint
};

// scheme: "cc" | "bt" | "flmc" | "mcml". bt forces a trivial common part.
// The components argument is ignored for bt.
RegionRun run_region_scheme(const std::string& scheme, const DistributedSource& src,
                            const ComponentPair& components, const RegionRunOptions& opts);

// BTSI sweep with random (X,Y)->U kernels and optimal reconstructions.
RegionRun run_region_btsi(const SourceWithSideInfo& src, const RegionRunOptions& opts);

}  // namespace rdlab
