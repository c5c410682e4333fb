#include "doctest.h"

#include "rdlab/correction.hpp"
#include "rdlab/flmc_terms.hpp"
#include "rdlab/info.hpp"
#include "rdlab/quantizer.hpp"
#include "rdlab/regions.hpp"
#include "rdlab/sim.hpp"

#include <cmath>

using namespace rdlab;

namespace {

JointDist uniform_s() { return JointDist::uniform({Alphabet(2)}); }

DistributedSource coupled_binary() {
    std::vector<double> d = {0.0, 1.0, 1.0, 0.0};
    return DistributedSource(Alphabet(2), Alphabet(2),
                             JointDist({Alphabet(2), Alphabet(2)}, {0.5, 0.0, 0.0, 0.5}), d, d);
}

QuantizerCodebook all_sequences_codebook(int n, double tauHat) {
    const JointDist target({Alphabet(2), Alphabet(2)}, {0.4, 0.1, 0.1, 0.4});
    std::vector<std::vector<int>> cws;
    for (int code = 0; code < (1 << n); ++code) {
        std::vector<int> cw(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) cw[static_cast<std::size_t>(i)] = (code >> i) & 1;
        cws.push_back(std::move(cw));
    }
    return QuantizerCodebook(n, Alphabet(2), Alphabet(2), target, std::move(cws),
                             EncoderRule::JointlyTypical, tauHat, false);
}

}  // namespace

TEST_CASE("codebook size follows the rate exponent") {
    const CondDist chan = CondDist::bsc(0.2);
    const int n = 2;
    const double tau = 1.2;
    const QuantizerCodebook q =
        build_quantizer(uniform_s(), chan, n, tau, EncoderRule::JointlyTypical, 99);
    // Independent recomputation of the exponent.
    const JointDist pSW({Alphabet(2), Alphabet(2)}, {0.4, 0.1, 0.1, 0.4});
    const double iWS = 1.0 - binary_entropy(0.2);
    const double th = theta_n(pSW, n, tau);
    const int expected =
        static_cast<int>(std::ceil(std::exp2(n * (iWS + th - 1.0 / n))));
    CHECK(q.theta() == expected);
    CHECK(q.rate_per_symbol() <= iWS + th + 1e-12);
    CHECK(q.formula_sized());

    // Degenerate |W| = 1: every codeword identical, constant encoder.
    const CondDist toOne = CondDist::constant({Alphabet(2)}, Alphabet(1), 0);
    const QuantizerCodebook q1 =
        build_quantizer_fixed(uniform_s(), toOne, 3, 0.5, 4, EncoderRule::JointlyTypical, 5);
    for (int i = 0; i < q1.theta(); ++i)
        CHECK(q1.codeword(i) == std::vector<int>{0, 0, 0});
    const int block[] = {0, 1, 0};
    CHECK(q1.encode(block) == q1.encode(std::vector<int>{1, 1, 1}));

    // n = 1: codewords are single typical symbols with first-typical encoding.
    const QuantizerCodebook qn1 =
        build_quantizer_fixed(uniform_s(), chan, 1, 1.7, 3, EncoderRule::JointlyTypical, 7);
    for (int i = 0; i < qn1.theta(); ++i) CHECK(qn1.codeword(i).size() == 1);
}

TEST_CASE("covering probability") {
    const JointDist pS = uniform_s();
    const int n = 6;
    // phi >= 1 can never fail: the type deviation is at most 1.
    const QuantizerCodebook full = all_sequences_codebook(n, 0.8);
    const auto never = measure_covering(full, pS, 1.0, 2.0, true, 0, 1);
    CHECK(never.failureProb == doctest::Approx(0.0));
    CHECK(never.vacuous);

    // Monotone in codebook growth along a shared prefix.
    const double tauHat = 0.55;
    const double phi = tauHat / 4.0;
    StreamRng rng(404);
    std::vector<std::vector<int>> cws;
    double prevFail = 1.0;
    const JointDist target({Alphabet(2), Alphabet(2)}, {0.4, 0.1, 0.1, 0.4});
    for (int growth = 0; growth < 4; ++growth) {
        for (int add = 0; add < 3; ++add) {
            std::vector<int> cw(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) cw[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
            cws.push_back(std::move(cw));
        }
        const QuantizerCodebook q(n, Alphabet(2), Alphabet(2), target, cws,
                                  EncoderRule::JointlyTypical, tauHat, false);
        const auto cov = measure_covering(q, pS, phi, 8.0 * std::exp(-2.0 * n * 0.1), true, 0, 1);
        CHECK(cov.exact);
        CHECK(cov.failureProb <= prevFail + 1e-12);
        prevFail = cov.failureProb;
    }

    // Sampled mode carries a Hoeffding radius.
    const QuantizerCodebook q(n, Alphabet(2), Alphabet(2), target, cws,
                              EncoderRule::JointlyTypical, tauHat, false);
    const auto sampled = measure_covering(q, pS, phi, 1.5, false, 4000, 17);
    const auto exact = measure_covering(q, pS, phi, 1.5, true, 0, 17);
    CHECK(sampled.radius == doctest::Approx(std::sqrt(std::log(200.0) / 8000.0)).epsilon(1e-12));
    CHECK(std::abs(sampled.failureProb - exact.failureProb) <= 3.0 * sampled.radius);
}

TEST_CASE("correction channel exactness") {
    const CondDist chan = CondDist::bsc(0.2);
    for (int n : {4, 6, 8}) {
        const QuantizerCodebook q = build_quantizer_fixed(uniform_s(), chan, n, 0.12, 6,
                                                          EncoderRule::JointlyTypical, 1000 + n);
        // Exact mode gates the corrected joint at 1e-10 internally.
        const CorrectionChannel c = build_correction(q, uniform_s(), true);
        CHECK(c.exact);
        CHECK(c.maxResidual <= 1e-10);
        CHECK(variational_distance(c.correctedJoint, q.target_sw()) <= 1e-10);
        // Rows are valid pmfs by the validity argument.
        for (std::size_t a = 0; a < 2; ++a) {
            double row = 0.0;
            for (std::size_t t = 0; t < 3; ++t) {
                CHECK(c.pTgivenS.kernel(a, t) >= 0.0);
                row += c.pTgivenS.kernel(a, t);
            }
            CHECK(row == doctest::Approx(1.0).epsilon(1e-14));
        }
    }

    // |W| = 1 leaves nothing to correct: T = 0 almost surely, H(T) = 0.
    const CondDist toOne = CondDist::constant({Alphabet(2)}, Alphabet(1), 0);
    const QuantizerCodebook q1 =
        build_quantizer_fixed(uniform_s(), toOne, 4, 0.5, 2, EncoderRule::JointlyTypical, 3);
    const CorrectionChannel c1 = build_correction(q1, uniform_s(), true);
    const auto rate1 = correction_rate(c1, uniform_s(), 0.9);
    CHECK(rate1.hT == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rate1.p0 == doctest::Approx(1.0));

    // Sampled mode reports a residual instead of gating.
    const QuantizerCodebook q = build_quantizer_fixed(uniform_s(), chan, 6, 0.12, 6,
                                                      EncoderRule::JointlyTypical, 42);
    const CorrectionChannel cs = build_correction(q, uniform_s(), false, 20000, 9);
    CHECK_FALSE(cs.exact);
    CHECK(cs.maxResidual < 0.05);
    CHECK(cs.maxResidual > 0.0);
}

TEST_CASE("correction rate bound") {
    // Worst admissible channel: P(T=0) = p(tau) with uniform nonzero rows
    // meets the grouping bound with equality.
    const double pTau = 0.7;
    const int wS = 4;
    std::vector<double> k;
    for (int a = 0; a < 2; ++a) {
        k.push_back(pTau);
        for (int t = 0; t < wS; ++t) k.push_back((1.0 - pTau) / wS);
    }
    CorrectionChannel c{CondDist({Alphabet(2)}, {Alphabet(wS + 1)}, k),
                        {},
                        JointDist::uniform({Alphabet(2), Alphabet(wS)}),
                        JointDist::uniform({Alphabet(2), Alphabet(wS)}),
                        true,
                        0.0};
    const auto r = correction_rate(c, uniform_s(), pTau);
    CHECK(r.boundApplies);
    CHECK(r.hT == doctest::Approx(r.lambdaBound).epsilon(1e-12));
    CHECK(r.holds);

    // A measured quantizer stays strictly below the bound.
    const CondDist chan = CondDist::bsc(0.2);
    const QuantizerCodebook q = build_quantizer_fixed(uniform_s(), chan, 8, 0.12, 6,
                                                      EncoderRule::JointlyTypical, 77);
    const CorrectionChannel cq = build_correction(q, uniform_s(), true);
    const double pmin = q.target_sw().min_cell();
    const double phi = 0.12;
    const double phiPrime = 8.0 * std::exp(-2.0 * 8 * 0.12 * 0.12 / 4.0);
    const double pt = pmin / (pmin + phi + phiPrime);
    const auto rq = correction_rate(cq, uniform_s(), pt);
    if (rq.boundApplies) CHECK(rq.hT <= rq.lambdaBound + 1e-12);
}

TEST_CASE("interleaving matches the exact induced joint") {
    const DistributedSource src = coupled_binary();
    const ComponentPair comp(Alphabet(2), {0, 1}, {0, 1}, 0.0);
    const CondDist chan = CondDist::bsc(0.2);
    const QuantizerCodebook q =
        build_quantizer_fixed(uniform_s(), chan, 4, 0.3, 3, EncoderRule::JointlyTypical, 11);
    const CorrectionChannel c = build_correction(q, uniform_s(), true);

    double agreeExact = 0.0;
    const JointDist exact4 = exact_induced_joint4(q, c, src, comp, &agreeExact);

    const long long m = 20000;
    const InterleaveResult il = interleave_and_induce(q, c, src, comp, m, 2024);
    CHECK(il.rowInvariancePass);
    CHECK(il.shufflePass);
    // Per-cell agreement within 5 standard errors of the exact joint.
    for (std::size_t cell = 0; cell < exact4.cells(); ++cell) {
        const double se =
            std::sqrt(std::max(exact4[cell] * (1.0 - exact4[cell]), 1e-9) /
                      (static_cast<double>(m) * 4.0));
        CHECK(std::abs(il.empirical4[cell] - exact4[cell]) <= 5.0 * se + 1e-4);
    }
    // Coupling-agreement floor on both the exact and empirical sides.
    const double pmin = q.target_sw().min_cell();
    const double phi = 0.3;
    const double phiPrime = 8.0 * std::exp(-2.0 * 4 * 0.3 * 0.3 / 4.0);
    const double pTau = pmin / (pmin + phi + phiPrime);
    const double dn = delta_n(comp.epsilon, 4);
    CHECK(agreeExact >= pTau * (1.0 - dn) - 1e-12);
    CHECK(il.probAgreeWS >= pTau * (1.0 - dn) - 0.02);
}

TEST_CASE("variational bound on the induced joint") {
    const DistributedSource src = coupled_binary();
    const ComponentPair comp(Alphabet(2), {0, 1}, {0, 1}, 0.0);
    const CondDist pW = CondDist::bsc(0.2);
    const QuantizerCodebook q =
        build_quantizer_fixed(uniform_s(), pW, 5, 0.25, 4, EncoderRule::JointlyTypical, 3);
    const CorrectionChannel c = build_correction(q, uniform_s(), true);
    const JointDist p4 = exact_induced_joint4(q, c, src, comp);

    std::vector<double> k(2 * 2 * 2);
    for (int x = 0; x < 2; ++x)
        for (int w = 0; w < 2; ++w)
            for (int u = 0; u < 2; ++u)
                k[static_cast<std::size_t>((x * 2 + w) * 2 + u)] = (u == (x ^ w)) ? 0.85 : 0.15;
    const CondDist pU({Alphabet(2), Alphabet(2)}, {Alphabet(2)}, k);
    const JointDist p6 = extend_with_test_channels(p4, pU, pU);

    const double pmin = q.target_sw().min_cell();
    const double phi = 0.25;
    const double phiPrime = 8.0 * std::exp(-2.0 * 5 * 0.25 * 0.25 / 4.0);
    const double pTau = pmin / (pmin + phi + phiPrime);
    const VariationalBoundResult r =
        check_variational_bound(p6, src, comp, pW, pU, pU, comp.epsilon, pTau, delta_n(comp.epsilon, 5));
    CHECK(r.pass);
    CHECK(r.margin >= 0.0);
    CHECK(r.measuredV <= 1.0);

    // The same induced joint satisfies the multi-letter conditions.
    const JointDist pSW = q.target_sw();
    FlmcCorrectionTerms terms{};
    terms.pTau = pTau;
    terms.deltaN = delta_n(comp.epsilon, 5);
    terms.eN = 0.0;
    terms.lambdaN = binary_entropy(pTau) + (1.0 - pTau);
    terms.thetaN = 0.5;  // any finite value; only the corner offsets shift
    std::vector<int> g(2 * 2 * 2 * 2, 0);
    for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2)
            for (int u1 = 0; u1 < 2; ++u1)
                for (int u2 = 0; u2 < 2; ++u2)
                    g[static_cast<std::size_t>(((w1 * 2 + w2) * 2 + u1) * 2 + u2)] = u1 ^ w1;
    McmlConditionReport rep;
    const CornerPair cp = mcml_alpha(src, comp, p6, pW, pU, pU, terms, g, g, &rep);
    CHECK(rep.worst() <= 1e-9);
    CHECK(cp.lowR1.r1 >= 0.0);
    (void)pSW;
}

TEST_CASE("one-help-one end-to-end simulation") {
    BohoSimConfig cfg;
    cfg.p = 0.3;
    cfg.epsilon = 0.0;
    cfg.n = 8;
    cfg.theta = 6;
    cfg.delta = 0.2;
    cfg.delta1 = 0.05;
    cfg.tau = 0.1;
    cfg.m = 4000;
    cfg.trials = 2;
    cfg.masterSeed = 5;
    cfg.threads = 1;

    // eps = 0: both encoders quantize the same block, D2 collapses to the
    // second-layer noise rate.
    const BohoSimReport rep0 = boho_end_to_end(cfg);
    CHECK(rep0.pooled.vDisagree == doctest::Approx(0.0));
    CHECK(std::abs(rep0.pooled.d2 - cfg.delta1) <= 4.0 * rep0.d2Radius);
    CHECK(rep0.d2GatePass);
    CHECK(rep0.fin1GatePass);

    // Identical config reproduces identical report bytes across thread counts.
    cfg.epsilon = 1e-3;
    cfg.threads = 1;
    const BohoSimReport repA = boho_end_to_end(cfg);
    cfg.threads = 2;
    const BohoSimReport repB = boho_end_to_end(cfg);
    CHECK(repA.to_text() == repB.to_text());
    CHECK(repA.per_trial_csv() == repB.per_trial_csv());
    CHECK(repA.hardGatePass);
}
