#include "rdlab/sweep.hpp"

#include "rdlab/correction.hpp"
#include "rdlab/info.hpp"
#include "rdlab/sim.hpp"

#include <algorithm>
#include <cmath>

namespace rdlab {

namespace {

// Dirichlet(1) row mixed with uniform mass kernelFloor.
CondDist random_kernel(std::vector<Alphabet> from, const Alphabet& to, double floorWeight,
                       StreamRng& rng) {
    std::size_t fromCells = 1;
    for (const auto& a : from) fromCells *= static_cast<std::size_t>(a.size);
    const auto toCells = static_cast<std::size_t>(to.size);
    std::vector<double> k(fromCells * toCells);
    for (std::size_t r = 0; r < fromCells; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < toCells; ++c) {
            const double e = -std::log(1.0 - rng.next_unit());
            k[r * toCells + c] = e;
            sum += e;
        }
        for (std::size_t c = 0; c < toCells; ++c) {
            k[r * toCells + c] =
                floorWeight / static_cast<double>(toCells) + (1.0 - floorWeight) * k[r * toCells + c] / sum;
        }
        double rowSum = 0.0;
        for (std::size_t c = 0; c < toCells; ++c) rowSum += k[r * toCells + c];
        for (std::size_t c = 0; c < toCells; ++c) k[r * toCells + c] /= rowSum;
    }
    return CondDist(std::move(from), {to}, std::move(k));
}

// Noisy deterministic rows: a random map blurred by a per-spec noise level.
// Spans near-deterministic (informative) through near-uniform quantizers,
// which a plain Dirichlet draw almost never produces.
CondDist noisy_deterministic_kernel(std::vector<Alphabet> from, const Alphabet& to,
                                    double noise, StreamRng& rng) {
    std::size_t fromCells = 1;
    for (const auto& a : from) fromCells *= static_cast<std::size_t>(a.size);
    const auto toCells = static_cast<std::size_t>(to.size);
    std::vector<double> k(fromCells * toCells);
    for (std::size_t r = 0; r < fromCells; ++r) {
        const std::size_t hit = rng.next_below(toCells);
        double sum = 0.0;
        for (std::size_t c = 0; c < toCells; ++c) {
            const double e = -std::log(1.0 - rng.next_unit());
            k[r * toCells + c] = e;
            sum += e;
        }
        for (std::size_t c = 0; c < toCells; ++c) {
            k[r * toCells + c] = noise * k[r * toCells + c] / sum + (c == hit ? 1.0 - noise : 0.0);
        }
        double rowSum = 0.0;
        for (std::size_t c = 0; c < toCells; ++c) rowSum += k[r * toCells + c];
        for (std::size_t c = 0; c < toCells; ++c) k[r * toCells + c] /= rowSum;
    }
    return CondDist(std::move(from), {to}, std::move(k));
}

DistributedSource swapped_source(const DistributedSource& src) {
    const auto n1 = static_cast<std::size_t>(src.x1.size);
    const auto n2 = static_cast<std::size_t>(src.x2.size);
    std::vector<double> p(n2 * n1);
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) p[b * n1 + a] = src.pmf[a * n2 + b];
    return DistributedSource(src.x2, src.x1, JointDist({src.x2, src.x1}, std::move(p)), src.d2,
                             src.d1);
}

ComponentPair swapped_components(const ComponentPair& c) {
    return ComponentPair(c.s, c.f2, c.f1, c.epsilon);
}

ComponentPair trivial_components(const DistributedSource& src) {
    return ComponentPair(Alphabet(1), std::vector<int>(static_cast<std::size_t>(src.x1.size), 0),
                         std::vector<int>(static_cast<std::size_t>(src.x2.size), 0), 0.0);
}

void push_corners(std::vector<TaggedCorner>& cloud, const CornerPair& cp, long long prov,
                  bool swapped) {
    auto fix = [&](RDTuple rd) {
        if (swapped) {
            std::swap(rd.r1, rd.r2);
            std::swap(rd.d1, rd.d2);
        }
        return rd;
    };
    cloud.push_back({fix(cp.lowR1), prov});
    const RDTuple a = fix(cp.lowR1), b = fix(cp.lowR2);
    if (a.r1 != b.r1 || a.r2 != b.r2) cloud.push_back({b, prov});
}

}  // namespace

FlmcCodingSpec sample_coding_spec(const DistributedSource& src, const ComponentPair& components,
                                  const SpecSampleOptions& opts, StreamRng& rng) {
    const Alphabet wA(opts.wSize), u1A(opts.u1Size), u2A(opts.u2Size);
    // The W kernel keeps a uniform floor so P_{S,W} stays strictly positive;
    // the U kernels sweep a log-uniform noise level.
    CondDist pW = random_kernel({components.s}, wA, opts.kernelFloor, rng);
    const double noise = std::exp(std::log(0.02) + rng.next_unit() * std::log(0.6 / 0.02));
    CondDist pU1 = noisy_deterministic_kernel({src.x1, wA}, u1A, noise, rng);
    CondDist pU2 = noisy_deterministic_kernel({src.x2, wA}, u2A, noise, rng);
    // Placeholder maps, replaced by the optimal reconstructions below.
    std::vector<int> g1(static_cast<std::size_t>(opts.wSize) * static_cast<std::size_t>(opts.u1Size) *
                            static_cast<std::size_t>(opts.u2Size),
                        0);
    std::vector<int> g2 = g1;
    FlmcCodingSpec spec(components, std::move(pW), std::move(pU1), std::move(pU2), std::move(g1),
                        std::move(g2));
    const JointDist j = build_coding_joint(src, spec);
    optimal_g(src, j, spec.g1, spec.g2);
    return spec;
}

namespace {

void run_one_side(const std::string& scheme, const DistributedSource& src,
                  const ComponentPair& components, const RegionRunOptions& opts, bool swapped,
                  std::uint64_t seed, std::vector<TaggedCorner>& cloud,
                  std::vector<RegionProvenance>& prov) {
    StreamRng rng(StreamRng::derive(seed, 0x73706563));
    for (int k = 0; k < opts.specs; ++k) {
        const FlmcCodingSpec spec = sample_coding_spec(src, components, opts.sample, rng);
        CornerPair cp;
        if (scheme == "cc" || scheme == "bt") {
            cp = cc_alpha(src, spec);
        } else if (scheme == "flmc") {
            cp = flmc_alpha(src, spec, opts.n, opts.tau, opts.enforceRanges);
        } else if (scheme == "mcml") {
            // Induced joint from the exact small-n construction.
            const JointDist pSW = build_psw(src, spec);
            const int keepS[] = {0};
            const JointDist pS = pSW.marginal(keepS);
            const QuantizerCodebook cb = build_quantizer_fixed(
                pS, spec.pW, opts.quantizerN, opts.tau,
                std::max(2, spec.pW.to_axes()[0].size * 2), EncoderRule::JointlyTypical,
                StreamRng::derive(seed, 0x71, static_cast<std::uint64_t>(k)));
            const CorrectionChannel corr = build_correction(cb, pS, true);
            const JointDist p4 = exact_induced_joint4(cb, corr, src, components);
            const JointDist p6 = extend_with_test_channels(p4, spec.pU1, spec.pU2);
            const FlmcCorrectionTerms terms =
                flmc_corrections(components, pSW, opts.quantizerN, opts.tau, src.d1_max(),
                                 src.d2_max(), opts.sample.u1Size, opts.sample.u2Size, false);
            const int wS = spec.pW.to_axes()[0].size;
            std::vector<int> g1m(static_cast<std::size_t>(wS) * static_cast<std::size_t>(wS) *
                                     static_cast<std::size_t>(opts.sample.u1Size) *
                                     static_cast<std::size_t>(opts.sample.u2Size),
                                 0);
            std::vector<int> g2m = g1m;
            // Reconstruct from (w1, u1, u2) as in the single-letter maps.
            for (std::size_t w1 = 0; w1 < static_cast<std::size_t>(wS); ++w1)
                for (std::size_t w2 = 0; w2 < static_cast<std::size_t>(wS); ++w2)
                    for (std::size_t u1 = 0; u1 < static_cast<std::size_t>(opts.sample.u1Size); ++u1)
                        for (std::size_t u2 = 0; u2 < static_cast<std::size_t>(opts.sample.u2Size);
                             ++u2) {
                            const std::size_t src4 =
                                ((w1 * static_cast<std::size_t>(wS) + w2) *
                                     static_cast<std::size_t>(opts.sample.u1Size) +
                                 u1) *
                                    static_cast<std::size_t>(opts.sample.u2Size) +
                                u2;
                            const std::size_t src3 =
                                (w1 * static_cast<std::size_t>(opts.sample.u1Size) + u1) *
                                    static_cast<std::size_t>(opts.sample.u2Size) +
                                u2;
                            g1m[src4] = spec.g1[src3];
                            g2m[src4] = spec.g2[src3];
                        }
            cp = mcml_alpha(src, components, p6, spec.pW, spec.pU1, spec.pU2, terms, g1m, g2m);
        } else {
            throw ValidationError("run_region_scheme: unknown scheme " + scheme);
        }
        const bool usesBlocklength = scheme == "flmc" || scheme == "mcml";
        prov.push_back({scheme, components.epsilon,
                        usesBlocklength ? (scheme == "mcml" ? opts.quantizerN : opts.n) : 0,
                        usesBlocklength ? opts.tau : 0.0, k});
        push_corners(cloud, cp, static_cast<long long>(prov.size()) - 1, swapped);
    }
}

}  // namespace

RegionRun run_region_scheme(const std::string& scheme, const DistributedSource& src,
                            const ComponentPair& components, const RegionRunOptions& opts) {
    RegionRun run;
    const ComponentPair& comp = scheme == "bt" ? trivial_components(src) : components;
    // A trivial common part forces |W| = 1 caps-wise only when sampling W off S;
    // bt keeps the sampled |W| but W carries no information about the sources.
    run_one_side(scheme, src, comp, opts, false, opts.seed, run.corners, run.prov);
    if (opts.swapSymmetrize) {
        const DistributedSource swp = swapped_source(src);
        const ComponentPair swc =
            scheme == "bt" ? trivial_components(swp) : swapped_components(comp);
        run_one_side(scheme, swp, swc, opts, true, StreamRng::derive(opts.seed, 0x73776170),
                     run.corners, run.prov);
    }
    run.boundary = assemble_region(run.corners, opts.fixedD1, opts.fixedD2, opts.hull);
    return run;
}

RegionRun run_region_btsi(const SourceWithSideInfo& src, const RegionRunOptions& opts) {
    RegionRun run;
    StreamRng rng(StreamRng::derive(opts.seed, 0x73706563));
    const Alphabet u1A(opts.sample.u1Size), u2A(opts.sample.u2Size);
    for (int k = 0; k < opts.specs; ++k) {
        CondDist pU1 = random_kernel({src.x1, src.y1}, u1A, opts.sample.kernelFloor, rng);
        CondDist pU2 = random_kernel({src.x2, src.y2}, u2A, opts.sample.kernelFloor, rng);

        // Optimal reconstructions over (U1, U2, Y1, Y2).
        std::vector<Alphabet> axes = {src.x1, src.x2, src.y1, src.y2, u1A, u2A};
        const JointDist j = JointDist::from_function(axes, [&](std::span<const int> i) {
            const int idx4[] = {i[0], i[1], i[2], i[3]};
            const double base = src.pmf.at(idx4);
            if (base == 0.0) return 0.0;
            return base *
                   pU1.kernel(static_cast<std::size_t>(i[0]) * static_cast<std::size_t>(src.y1.size) +
                                  static_cast<std::size_t>(i[2]),
                              static_cast<std::size_t>(i[4])) *
                   pU2.kernel(static_cast<std::size_t>(i[1]) * static_cast<std::size_t>(src.y2.size) +
                                  static_cast<std::size_t>(i[3]),
                              static_cast<std::size_t>(i[5]));
        });
        const int keep1[] = {4, 5, 2, 3, 0};
        const int keep2[] = {4, 5, 2, 3, 1};
        const JointDist m1 = j.marginal(keep1);
        const JointDist m2 = j.marginal(keep2);
        const std::size_t gCells = static_cast<std::size_t>(opts.sample.u1Size) *
                                   static_cast<std::size_t>(opts.sample.u2Size) *
                                   static_cast<std::size_t>(src.y1.size) *
                                   static_cast<std::size_t>(src.y2.size);
        std::vector<int> g1(gCells, 0), g2(gCells, 0);
        for (std::size_t cell = 0; cell < gCells; ++cell) {
            double best1 = 1e300, best2 = 1e300;
            for (int xh = 0; xh < src.x1.size; ++xh) {
                double cost = 0.0;
                for (int x = 0; x < src.x1.size; ++x)
                    cost += m1[cell * static_cast<std::size_t>(src.x1.size) +
                               static_cast<std::size_t>(x)] *
                            src.d1_at(x, xh);
                if (cost < best1) {
                    best1 = cost;
                    g1[cell] = xh;
                }
            }
            for (int xh = 0; xh < src.x2.size; ++xh) {
                double cost = 0.0;
                for (int x = 0; x < src.x2.size; ++x)
                    cost += m2[cell * static_cast<std::size_t>(src.x2.size) +
                               static_cast<std::size_t>(x)] *
                            src.d2_at(x, xh);
                if (cost < best2) {
                    best2 = cost;
                    g2[cell] = xh;
                }
            }
        }
        const CornerPair cp = btsi_alpha(src, pU1, pU2, g1, g2);
        run.prov.push_back({"btsi", 0.0, 0, 0.0, k});
        push_corners(run.corners, cp, static_cast<long long>(run.prov.size()) - 1, false);
    }
    run.boundary = assemble_region(run.corners, opts.fixedD1, opts.fixedD2, opts.hull);
    return run;
}

}  // namespace rdlab
