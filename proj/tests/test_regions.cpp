#include "doctest.h"

#include "rdlab/checks.hpp"
#include "rdlab/components.hpp"
#include "rdlab/info.hpp"
#include "rdlab/regions.hpp"
#include "rdlab/sweep.hpp"

#include <cmath>

using namespace rdlab;

namespace {

DistributedSource coupled_binary() {
    std::vector<double> d = {0.0, 1.0, 1.0, 0.0};
    return DistributedSource(Alphabet(2), Alphabet(2),
                             JointDist({Alphabet(2), Alphabet(2)}, {0.5, 0.0, 0.0, 0.5}), d, d);
}

DistributedSource dsbs(double q) {
    std::vector<double> d = {0.0, 1.0, 1.0, 0.0};
    return DistributedSource(
        Alphabet(2), Alphabet(2),
        JointDist({Alphabet(2), Alphabet(2)}, {0.5 * (1 - q), 0.5 * q, 0.5 * q, 0.5 * (1 - q)}), d,
        d);
}

}  // namespace

TEST_CASE("admissible blocklength set") {
    const BSet b = b_set(1e-4, 4.0, 2.0);
    CHECK(b.lower == 4);
    CHECK(b.upper == 85167);  // floor of ln(2e-4)/ln(0.9999) = 85167.6...
    CHECK_FALSE(b.unbounded);
    CHECK(b.contains(85167));
    CHECK_FALSE(b.contains(85168));

    CHECK(b_set(0.4, 4.0, 2.0).empty());  // empty above eps = 1/3
    CHECK(b_set(0.34, 4.0, 2.0).empty());

    const BSet b0 = b_set(0.0, 4.0, 2.0);
    CHECK(b0.unbounded);
    CHECK(b0.contains(1000000000000000000LL));
}

TEST_CASE("correction terms match the closed forms") {
    const JointDist pSW({Alphabet(2), Alphabet(2)}, {0.4, 0.1, 0.1, 0.4});
    const ComponentPair comp(Alphabet(2), {0, 1}, {0, 1}, 1e-4);

    // BSC(delta) with uniform input: sigma' = delta/4 and
    // (sigma/sigma')^2 = (64/delta^2) ln(32/delta).
    double sigma = 0.0, sigmaPrime = 0.0;
    flmc_sigmas(pSW, sigma, sigmaPrime);
    CHECK(sigmaPrime == doctest::Approx(0.2 / 4.0).epsilon(1e-14));
    CHECK(sigma * sigma / (sigmaPrime * sigmaPrime) ==
          doctest::Approx(64.0 / 0.04 * std::log(32.0 / 0.2)).epsilon(1e-12));

    const auto t = flmc_corrections(comp, pSW, 10000, 0.048, 0.0, 1.0, 2, 2, true);
    CHECK(t.phiPrime == doctest::Approx(8.0 * std::exp(-11.52)).epsilon(1e-12));
    CHECK(t.pTau == doctest::Approx(0.1 / (0.1 + t.phiPrime + 0.048)).epsilon(1e-12));
    CHECK(t.phi == doctest::Approx(0.048).epsilon(1e-14));
    CHECK(delta_n(1e-4, 100) == doctest::Approx(0.0099508).epsilon(1e-4));

    // Range violations are rejected.
    CHECK_THROWS_AS(flmc_corrections(comp, pSW, 100, 0.048, 0.0, 1.0, 2, 2, true),
                    InfeasibleError);  // n below (sigma/sigma')^2
    CHECK_THROWS_AS(flmc_corrections(comp, pSW, 10000, 0.2, 0.0, 1.0, 2, 2, true),
                    InfeasibleError);  // tau above sigma'
    const JointDist zeroCell({Alphabet(2), Alphabet(2)}, {0.5, 0.0, 0.1, 0.4});
    CHECK_THROWS_AS(flmc_corrections(comp, zeroCell, 10000, 0.048, 0.0, 1.0, 2, 2, true),
                    ValidationError);
}

TEST_CASE("correction terms asymptotics") {
    const JointDist pSW({Alphabet(2), Alphabet(2)}, {0.3, 0.2, 0.2, 0.3});
    const ComponentPair compEps(Alphabet(2), {0, 1}, {0, 1}, 1e-3);
    // E_{n, delta_n} nondecreasing in n at fixed eps > 0; tau sits inside the
    // admissible window for the whole n range.
    double prev = -1.0;
    for (long long n : {1800, 2500, 4000, 6000}) {
        const auto t = flmc_corrections(compEps, pSW, n, 0.0995, 0.0, 1.0, 2, 2, true);
        CHECK(t.eN >= prev);
        prev = t.eN;
    }
    // theta and Lambda vanish along tau = n^{-0.4} at eps = 0 (asymptotic
    // trend; range enforcement off below the admissible window).
    const ComponentPair comp0(Alphabet(2), {0, 1}, {0, 1}, 0.0);
    double prevTheta = 1e300, prevLambda = 1e300;
    for (long long n : {10000, 100000, 1000000, 10000000}) {
        const auto t = flmc_corrections(comp0, pSW, n, std::pow(static_cast<double>(n), -0.4),
                                        0.0, 1.0, 2, 2, false);
        CHECK(t.thetaN < prevTheta);
        CHECK(t.lambdaN < prevLambda);
        CHECK(t.eN == 0.0);
        prevTheta = t.thetaN;
        prevLambda = t.lambdaN;
    }
    CHECK(prevTheta < 0.02);
    CHECK(prevLambda < 0.1);
    // Far along the schedule both terms are negligible.
    const auto far = flmc_corrections(comp0, pSW, 1000000000000000000LL,
                                      std::pow(1e18, -0.4), 0.0, 1.0, 2, 2, true);
    CHECK(far.thetaN < 1e-5);
    CHECK(far.lambdaN < 1e-4);
}

TEST_CASE("common-component corner evaluation") {
    // Constant U's with W = S: rates collapse to the sum bound H(S).
    const DistributedSource src = coupled_binary();
    const GkResult gk = gk_common_part(src);
    REQUIRE(gk.pair.s.size == 2);

    const CondDist pW = CondDist::identity(Alphabet(2));
    const CondDist pU1 = CondDist::constant({Alphabet(2), Alphabet(2)}, Alphabet(1), 0);
    const CondDist pU2 = CondDist::constant({Alphabet(2), Alphabet(2)}, Alphabet(1), 0);
    std::vector<int> g = {0, 1};  // reconstruct from w
    const FlmcCodingSpec spec(gk.pair, pW, pU1, pU2, g, g);
    const CornerPair cp = cc_alpha(src, spec);
    CHECK(cp.lowR1.r1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cp.lowR1.r2 == doctest::Approx(1.0).epsilon(1e-12));  // H(S) = 1
    CHECK(cp.lowR2.r1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cp.lowR2.r2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cp.lowR1.d1 == doctest::Approx(0.0));
    CHECK(cp.lowR1.d2 == doctest::Approx(0.0));
}

TEST_CASE("lossless corner against the two-terminal entropy bounds") {
    // Trivial W, identity U's: the corner pair realizes the classic
    // (H(X1|X2), H(X2)) / (H(X1), H(X2|X1)) extremes.
    const DistributedSource src = dsbs(0.2);
    const ComponentPair trivial(Alphabet(1), {0, 0}, {0, 0}, 0.0);
    const CondDist pW = CondDist::constant({Alphabet(1)}, Alphabet(1), 0);
    // U_i = X_i exactly.
    const CondDist pU1({Alphabet(2), Alphabet(1)}, {Alphabet(2)}, {1, 0, 0, 1});
    const CondDist pU2({Alphabet(2), Alphabet(1)}, {Alphabet(2)}, {1, 0, 0, 1});
    std::vector<int> g1(4), g2(4);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2) {
            g1[static_cast<std::size_t>(u1 * 2 + u2)] = u1;
            g2[static_cast<std::size_t>(u1 * 2 + u2)] = u2;
        }
    const FlmcCodingSpec spec(trivial, pW, pU1, pU2, g1, g2);
    const CornerPair cp = cc_alpha(src, spec);

    const int a0[] = {0}, a1[] = {1};
    const int both[] = {0, 1};
    const double h1 = entropy(src.pmf, a0);
    const double h2 = entropy(src.pmf, a1);
    const double h12 = entropy(src.pmf, both);
    CHECK(cp.lowR1.r1 == doctest::Approx(h12 - h2).epsilon(1e-10));
    CHECK(cp.lowR1.r2 == doctest::Approx(h2).epsilon(1e-10));
    CHECK(cp.lowR2.r1 == doctest::Approx(h1).epsilon(1e-10));
    CHECK(cp.lowR2.r2 == doctest::Approx(h12 - h1).epsilon(1e-10));
    CHECK(cp.lowR1.d1 == doctest::Approx(0.0));
    CHECK(cp.lowR1.d2 == doctest::Approx(0.0));
}

TEST_CASE("finite-blocklength corner converges to the common-part corner") {
    const DistributedSource src = block_diag_source_3x3();
    const GkResult gk = gk_common_part(src);
    StreamRng rng(31);
    SpecSampleOptions opts;
    opts.wSize = 3;
    opts.u1Size = 3;
    opts.u2Size = 3;
    opts.kernelFloor = 0.3;
    for (int rep = 0; rep < 10; ++rep) {
        const FlmcCodingSpec spec = sample_coding_spec(src, gk.pair, opts, rng);
        const CornerPair cc = cc_alpha(src, spec);
        const long long n = 1000000000000000000LL;
        const CornerPair fl = flmc_alpha(src, spec, n, std::pow(static_cast<double>(n), -0.4));
        CHECK(fl.lowR1.r1 - cc.lowR1.r1 >= -1e-12);
        CHECK(fl.lowR1.r1 - cc.lowR1.r1 < 1e-3);
        CHECK(fl.lowR1.r2 - cc.lowR1.r2 < 1e-3);
        CHECK(fl.lowR2.r1 - cc.lowR2.r1 < 1e-3);
        CHECK(fl.lowR1.d1 - cc.lowR1.d1 < 1e-3);
        CHECK(fl.lowR1.d2 - cc.lowR1.d2 < 1e-3);
    }
}

TEST_CASE("lossless corner survives the finite-blocklength path") {
    // Trivial components and W, identity U's: at a huge first-layer
    // blocklength the corner pair recovers the two-terminal entropy extremes
    // within the correction slack.
    const DistributedSource src = dsbs(0.2);
    const ComponentPair trivial(Alphabet(1), {0, 0}, {0, 0}, 0.0);
    const CondDist pW = CondDist::constant({Alphabet(1)}, Alphabet(1), 0);
    const CondDist pU1({Alphabet(2), Alphabet(1)}, {Alphabet(2)}, {1, 0, 0, 1});
    const CondDist pU2({Alphabet(2), Alphabet(1)}, {Alphabet(2)}, {1, 0, 0, 1});
    std::vector<int> g1(4), g2(4);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2) {
            g1[static_cast<std::size_t>(u1 * 2 + u2)] = u1;
            g2[static_cast<std::size_t>(u1 * 2 + u2)] = u2;
        }
    const FlmcCodingSpec spec(trivial, pW, pU1, pU2, g1, g2);
    const long long n = 1000000000000000000LL;
    const CornerPair fl = flmc_alpha(src, spec, n, std::pow(static_cast<double>(n), -0.4));
    const int a1[] = {1};
    const int both[] = {0, 1};
    const double h2 = entropy(src.pmf, a1);
    const double h12 = entropy(src.pmf, both);
    CHECK(fl.lowR1.r1 == doctest::Approx(h12 - h2).epsilon(1e-4));
    CHECK(fl.lowR1.r2 == doctest::Approx(h2).epsilon(1e-4));
    CHECK(fl.lowR1.d1 < 1e-4);
}

TEST_CASE("degenerate spec: rates are corrections only") {
    // Nearly coupled source: identity components disagree with probability 1e-3.
    const DistributedSource src = dsbs(1e-3);
    const ComponentPair comp(Alphabet(2), {0, 1}, {0, 1},
                             epsilon_of(src, {0, 1}, {0, 1}, 2));
    CHECK(comp.epsilon == doctest::Approx(1e-3));
    // Constant W and U's.
    const CondDist pW = CondDist::constant({Alphabet(2)}, Alphabet(1), 0);
    const CondDist pU1 = CondDist::constant({Alphabet(2), Alphabet(1)}, Alphabet(1), 0);
    const CondDist pU2 = CondDist::constant({Alphabet(2), Alphabet(1)}, Alphabet(1), 0);
    const std::vector<int> g = {0};
    const FlmcCodingSpec spec(comp, pW, pU1, pU2, g, g);

    FlmcCorrectionTerms terms;
    // |W| = 1: pSW = P_S, pmin = 0.5; valid (n, tau) inside the window.
    const CornerPair cp = flmc_alpha(src, spec, 2000, 0.1, true, &terms);
    CHECK(cp.lowR1.r1 ==
          doctest::Approx(terms.eN + terms.gammaN + terms.lambdaN).epsilon(1e-12));
    CHECK(cp.lowR2.r2 == doctest::Approx(terms.eN + terms.gammaN).epsilon(1e-12));
    // Distortion: E d(X, 0) + 2 x d_max; both tables are Hamming with
    // P(X = 1) = 1/2, so E d = 1/2.
    CHECK(cp.lowR1.d1 == doctest::Approx(0.5 + 2.0 * terms.x).epsilon(1e-12));
    CHECK(cp.lowR1.d2 == doctest::Approx(0.5 + 2.0 * terms.x).epsilon(1e-12));
}

TEST_CASE("side-information corners") {
    const DistributedSource base = dsbs(0.1);
    // Y1 = Y2 = X2 as decoder/encoder side information.
    const JointDist pmf4 = JointDist::from_function(
        {Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(2)}, [&](std::span<const int> i) {
            if (i[2] != i[1] || i[3] != i[1]) return 0.0;
            const int idx[] = {i[0], i[1]};
            return base.pmf.at(idx);
        });
    const SourceWithSideInfo srcSI(Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(2), pmf4,
                                   base.d1, base.d2);
    // U1 = X1, U2 constant: rate corner I(X1; U1 | X2) = H(X1 | X2).
    const CondDist pU1({Alphabet(2), Alphabet(2)}, {Alphabet(2)}, {1, 0, 1, 0, 0, 1, 0, 1});
    const CondDist pU2 = CondDist::constant({Alphabet(2), Alphabet(2)}, Alphabet(1), 0);
    std::vector<int> g1(8), g2(8);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int y1 = 0; y1 < 2; ++y1)
            for (int y2 = 0; y2 < 2; ++y2) {
                const auto cell = static_cast<std::size_t>(((u1 * 1 + 0) * 2 + y1) * 2 + y2);
                g1[cell] = u1;
                g2[cell] = y2;
            }
    const CornerPair cp = btsi_alpha(srcSI, pU1, pU2, g1, g2);
    const int a0[] = {0}, a1[] = {1};
    const int both[] = {0, 1};
    const double hX1gX2 = entropy(base.pmf, both) - entropy(base.pmf, a1);
    (void)a0;
    CHECK(cp.lowR1.r1 == doctest::Approx(hX1gX2).epsilon(1e-10));
    CHECK(cp.lowR1.r2 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(cp.lowR1.d1 == doctest::Approx(0.0));  // U1 reproduces X1
    CHECK(cp.lowR1.d2 == doctest::Approx(0.0));  // Y2 reproduces X2
}

TEST_CASE("side information independent of the sources reduces to the plain corner") {
    const DistributedSource base = dsbs(0.15);
    const JointDist pmf4 = JointDist::from_function(
        {Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(2)}, [&](std::span<const int> i) {
            const int idx[] = {i[0], i[1]};
            return base.pmf.at(idx) * 0.5 * 0.5;  // uniform independent side info
        });
    const SourceWithSideInfo srcSI(Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(2), pmf4,
                                   base.d1, base.d2);
    // Kernels ignoring Y: a BSC quantizer per terminal.
    std::vector<double> k(2 * 2 * 2);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int u = 0; u < 2; ++u)
                k[static_cast<std::size_t>((x * 2 + y) * 2 + u)] = (u == x) ? 0.9 : 0.1;
    const CondDist pU({Alphabet(2), Alphabet(2)}, {Alphabet(2)}, k);
    std::vector<int> g1(16), g2(16);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2)
            for (int y1 = 0; y1 < 2; ++y1)
                for (int y2 = 0; y2 < 2; ++y2) {
                    const auto cell = static_cast<std::size_t>(((u1 * 2 + u2) * 2 + y1) * 2 + y2);
                    g1[cell] = u1;
                    g2[cell] = u2;
                }
    const CornerPair si = btsi_alpha(srcSI, pU, pU, g1, g2);

    // Matching plain corner via the common-part evaluation with trivial W.
    const ComponentPair trivial(Alphabet(1), {0, 0}, {0, 0}, 0.0);
    const CondDist pW = CondDist::constant({Alphabet(1)}, Alphabet(1), 0);
    std::vector<double> k2(2 * 1 * 2);
    for (int x = 0; x < 2; ++x)
        for (int u = 0; u < 2; ++u) k2[static_cast<std::size_t>(x * 2 + u)] = (u == x) ? 0.9 : 0.1;
    const CondDist pUplain({Alphabet(2), Alphabet(1)}, {Alphabet(2)}, k2);
    std::vector<int> gg1(4), gg2(4);
    for (int u1 = 0; u1 < 2; ++u1)
        for (int u2 = 0; u2 < 2; ++u2) {
            gg1[static_cast<std::size_t>(u1 * 2 + u2)] = u1;
            gg2[static_cast<std::size_t>(u1 * 2 + u2)] = u2;
        }
    const FlmcCodingSpec spec(trivial, pW, pUplain, pUplain, gg1, gg2);
    const CornerPair bt = cc_alpha(dsbs(0.15), spec);

    CHECK(si.lowR1.r1 == doctest::Approx(bt.lowR1.r1).epsilon(1e-10));
    CHECK(si.lowR1.r2 == doctest::Approx(bt.lowR1.r2).epsilon(1e-10));
    CHECK(si.lowR2.r1 == doctest::Approx(bt.lowR2.r1).epsilon(1e-10));
    CHECK(si.lowR1.d1 == doctest::Approx(bt.lowR1.d1).epsilon(1e-10));
    CHECK(si.lowR1.d2 == doctest::Approx(bt.lowR1.d2).epsilon(1e-10));
}

TEST_CASE("multi-letter bound set on a coupled construction") {
    const DistributedSource src = coupled_binary();
    const GkResult gk = gk_common_part(src);
    const CondDist pW({Alphabet(2)}, {Alphabet(2)}, {0.8, 0.2, 0.2, 0.8});
    const CondDist pU1 = CondDist::constant({Alphabet(2), Alphabet(2)}, Alphabet(1), 0);
    const CondDist pU2 = CondDist::constant({Alphabet(2), Alphabet(2)}, Alphabet(1), 0);

    // W'1 = W2 = W drawn once from pW(. | s1): the idealized coupled joint.
    const JointDist pP6 = JointDist::from_function(
        {Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(2), Alphabet(1), Alphabet(1)},
        [&](std::span<const int> i) {
            if (i[2] != i[3]) return 0.0;
            const int idx[] = {i[0], i[1]};
            const double base = src.pmf.at(idx);
            if (base == 0.0) return 0.0;
            const auto s1 = static_cast<std::size_t>(gk.pair.f1[static_cast<std::size_t>(i[0])]);
            return base * pW.kernel(s1, static_cast<std::size_t>(i[2]));
        });

    const JointDist pSW = JointDist::from_function(
        {Alphabet(2), Alphabet(2)}, [&](std::span<const int> i) {
            const int keep0[] = {0};
            const JointDist pX1 = src.pmf.marginal(keep0);
            double ps = 0.0;
            for (int x = 0; x < 2; ++x)
                if (gk.pair.f1[static_cast<std::size_t>(x)] == i[0])
                    ps += pX1[static_cast<std::size_t>(x)];
            return ps * pW.kernel(static_cast<std::size_t>(i[0]), static_cast<std::size_t>(i[1]));
        });
    const auto terms = flmc_corrections(gk.pair, pSW, 100000, 0.01, 1.0, 1.0, 1, 1, false);

    std::vector<int> g(2 * 2 * 1 * 1, 0);
    for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2) g[static_cast<std::size_t>(w1 * 2 + w2)] = w1;

    McmlConditionReport rep;
    const CornerPair cp = mcml_alpha(src, gk.pair, pP6, pW, pU1, pU2, terms, g, g, &rep);
    CHECK(rep.worst() <= 1e-12);

    // Degenerate U's: the sum rate keeps the I(W'1; S1) term.
    const int aW[] = {1}, aS[] = {0};
    const double iWS = mutual_info(pSW, aS, aW);
    CHECK(cp.lowR1.r1 + cp.lowR1.r2 >= iWS - 1e-10);

    // A corrupted joint trips the condition check.
    const JointDist corrupted = JointDist::from_function(
        pP6.axes(), [&](std::span<const int> i) {
            return 0.95 * pP6.at(i) + 0.05 / static_cast<double>(pP6.cells());
        });
    CHECK_THROWS_AS(mcml_alpha(src, gk.pair, corrupted, pW, pU1, pU2, terms, g, g),
                    ValidationError);
}

TEST_CASE("bt equals cc when the common part is trivial") {
    const DistributedSource src = dsbs(0.15);  // full support: trivial common part
    const GkResult gk = gk_common_part(src);
    REQUIRE(gk.pair.s.size == 1);
    RegionRunOptions opts;
    opts.specs = 40;
    opts.seed = 5;
    opts.sample.wSize = 2;
    opts.sample.u1Size = 2;
    opts.sample.u2Size = 2;
    opts.fixedD1 = 1.0;
    opts.fixedD2 = 1.0;
    const RegionRun cc = run_region_scheme("cc", src, gk.pair, opts);
    const RegionRun bt = run_region_scheme("bt", src, gk.pair, opts);
    REQUIRE(cc.boundary.points.size() == bt.boundary.points.size());
    for (std::size_t i = 0; i < cc.boundary.points.size(); ++i) {
        CHECK(cc.boundary.points[i].r1 == bt.boundary.points[i].r1);
        CHECK(cc.boundary.points[i].r2 == bt.boundary.points[i].r2);
    }
}

TEST_CASE("region assembly") {
    // A single corner survives as a single point.
    {
        const auto rb = assemble_region({{{0.5, 0.7, 0.0, 0.1}, 0}}, 1.0, 1.0, true);
        REQUIRE(rb.points.size() == 1);
        CHECK(rb.points[0].r1 == doctest::Approx(0.5));
    }
    // Dominated points are dropped.
    {
        const auto rb = assemble_region(
            {{{0.5, 0.7, 0.0, 0.0}, 0}, {{0.6, 0.8, 0.0, 0.0}, 1}}, 1.0, 1.0, false);
        REQUIRE(rb.points.size() == 1);
        CHECK(rb.points[0].provenanceId == 0);
    }
    // Distortion filtering and infeasibility.
    CHECK_THROWS_AS(assemble_region({{{0.5, 0.7, 0.5, 0.5}, 0}}, 0.1, 0.1, false),
                    InfeasibleError);
    // Hulling is idempotent.
    {
        std::vector<TaggedCorner> cloud;
        StreamRng rng(9);
        for (int k = 0; k < 60; ++k)
            cloud.push_back({{rng.next_unit(), rng.next_unit(), 0.0, 0.0}, k});
        const auto h1 = assemble_region(cloud, 1.0, 1.0, true);
        std::vector<TaggedCorner> again;
        for (const auto& p : h1.points) again.push_back({{p.r1, p.r2, 0.0, 0.0}, p.provenanceId});
        const auto h2 = assemble_region(again, 1.0, 1.0, true);
        REQUIRE(h1.points.size() == h2.points.size());
        for (std::size_t i = 0; i < h1.points.size(); ++i) {
            CHECK(h1.points[i].r1 == doctest::Approx(h2.points[i].r1));
            CHECK(h1.points[i].r2 == doctest::Approx(h2.points[i].r2));
        }
        // Sorted and strictly decreasing in r2.
        for (std::size_t i = 1; i < h1.points.size(); ++i) {
            CHECK(h1.points[i].r1 > h1.points[i - 1].r1);
            CHECK(h1.points[i].r2 < h1.points[i - 1].r2);
        }
    }
}

TEST_CASE("region containment") {
    std::vector<TaggedCorner> cloud = {
        {{0.1, 0.9, 0.0, 0.0}, 0}, {{0.3, 0.5, 0.0, 0.0}, 1}, {{0.8, 0.2, 0.0, 0.0}, 2}};
    const auto outer = assemble_region(cloud, 1.0, 1.0, true);
    // A region contains itself at zero slack.
    const auto self = region_contains(outer, outer, 0.0);
    CHECK(self.contains);
    CHECK(self.maxViolation <= 1e-12);
    // A shifted-up copy is contained; the outer is not contained in it.
    std::vector<TaggedCorner> shifted;
    for (const auto& c : cloud)
        shifted.push_back({{c.rd.r1 + 0.05, c.rd.r2 + 0.05, 0.0, 0.0}, c.provenanceId});
    const auto inner = assemble_region(shifted, 1.0, 1.0, true);
    CHECK(region_contains(outer, inner, 0.0).contains);
    const auto rev = region_contains(inner, outer, 1e-3);
    CHECK_FALSE(rev.contains);
    CHECK(rev.maxViolation == doctest::Approx(0.05 - 1e-3).epsilon(1e-6));
    // Slack at the shift size admits it.
    CHECK(region_contains(inner, outer, 0.05 + 1e-9).contains);
}
