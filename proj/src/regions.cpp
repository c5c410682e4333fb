#include "rdlab/regions.hpp"

#include "rdlab/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdlab {

namespace {

CornerPair make_corners(double r1Min, double r2Min, double rSum, double d1, double d2) {
    CornerPair c;
    c.lowR1 = {r1Min, std::max(r2Min, rSum - r1Min), d1, d2};
    c.lowR2 = {std::max(r1Min, rSum - r2Min), r2Min, d1, d2};
    return c;
}

}  // namespace

FlmcCodingSpec::FlmcCodingSpec(ComponentPair c, CondDist w, CondDist u1, CondDist u2,
                               std::vector<int> gg1, std::vector<int> gg2,
                               bool enforceCardinalityCaps)
    : components(std::move(c)), pW(std::move(w)), pU1(std::move(u1)), pU2(std::move(u2)),
      g1(std::move(gg1)), g2(std::move(gg2)) {
    const int sS = components.s.size;
    const int x1 = static_cast<int>(components.f1.size());
    const int x2 = static_cast<int>(components.f2.size());
    if (pW.from_axes().size() != 1 || pW.from_axes()[0].size != sS)
        throw ValidationError("FlmcCodingSpec: pW must map S");
    const int wS = pW.to_axes()[0].size;
    if (pU1.from_axes().size() != 2 || pU1.from_axes()[0].size != x1 || pU1.from_axes()[1].size != wS)
        throw ValidationError("FlmcCodingSpec: pU1 must map (X1, W)");
    if (pU2.from_axes().size() != 2 || pU2.from_axes()[0].size != x2 || pU2.from_axes()[1].size != wS)
        throw ValidationError("FlmcCodingSpec: pU2 must map (X2, W)");
    const int u1S = pU1.to_axes()[0].size;
    const int u2S = pU2.to_axes()[0].size;
    if (enforceCardinalityCaps) {
        if (wS > sS + 1) throw ValidationError("FlmcCodingSpec: |W| exceeds |S|+1");
        if (u1S > x1 * wS + 1) throw ValidationError("FlmcCodingSpec: |U1| exceeds |X1||W|+1");
        if (u2S > x2 * wS + 1) throw ValidationError("FlmcCodingSpec: |U2| exceeds |X2||W|+1");
    }
    const std::size_t gCells = static_cast<std::size_t>(wS) * static_cast<std::size_t>(u1S) *
                               static_cast<std::size_t>(u2S);
    if (g1.size() != gCells || g2.size() != gCells)
        throw ValidationError("FlmcCodingSpec: reconstruction maps must cover (W, U1, U2)");
    for (int v : g1)
        if (v < 0 || v >= x1) throw ValidationError("FlmcCodingSpec: g1 out of range");
    for (int v : g2)
        if (v < 0 || v >= x2) throw ValidationError("FlmcCodingSpec: g2 out of range");
}

JointDist build_coding_joint(const DistributedSource& src, const FlmcCodingSpec& spec) {
    const int wS = spec.pW.to_axes()[0].size;
    const int u1S = spec.pU1.to_axes()[0].size;
    const int u2S = spec.pU2.to_axes()[0].size;
    std::vector<Alphabet> axes = {src.x1, src.x2, Alphabet(wS), Alphabet(u1S), Alphabet(u2S)};
    return JointDist::from_function(std::move(axes), [&](std::span<const int> i) {
        const int x1 = i[0], x2 = i[1], w = i[2], u1 = i[3], u2 = i[4];
        const int idx[] = {x1, x2};
        const double base = src.pmf.at(idx);
        if (base == 0.0) return 0.0;
        const auto s1 = static_cast<std::size_t>(spec.components.f1[static_cast<std::size_t>(x1)]);
        const double kw = spec.pW.kernel(s1, static_cast<std::size_t>(w));
        const double k1 = spec.pU1.kernel(
            static_cast<std::size_t>(x1) * static_cast<std::size_t>(wS) + static_cast<std::size_t>(w),
            static_cast<std::size_t>(u1));
        const double k2 = spec.pU2.kernel(
            static_cast<std::size_t>(x2) * static_cast<std::size_t>(wS) + static_cast<std::size_t>(w),
            static_cast<std::size_t>(u2));
        return base * kw * k1 * k2;
    });
}

JointDist build_psw(const DistributedSource& src, const FlmcCodingSpec& spec) {
    const int sS = spec.components.s.size;
    const int wS = spec.pW.to_axes()[0].size;
    const int keepX1[] = {0};
    const JointDist pX1 = src.pmf.marginal(keepX1);
    std::vector<double> ps(static_cast<std::size_t>(sS), 0.0);
    for (int x = 0; x < src.x1.size; ++x)
        ps[static_cast<std::size_t>(spec.components.f1[static_cast<std::size_t>(x)])] +=
            pX1[static_cast<std::size_t>(x)];
    std::vector<double> p(static_cast<std::size_t>(sS) * static_cast<std::size_t>(wS));
    for (int s = 0; s < sS; ++s)
        for (int w = 0; w < wS; ++w)
            p[static_cast<std::size_t>(s) * static_cast<std::size_t>(wS) + static_cast<std::size_t>(w)] =
                ps[static_cast<std::size_t>(s)] * spec.pW.kernel(static_cast<std::size_t>(s),
                                                                 static_cast<std::size_t>(w));
    return JointDist({Alphabet(sS), Alphabet(wS)}, std::move(p));
}

void optimal_g(const DistributedSource& src, const JointDist& joint5, std::vector<int>& g1,
               std::vector<int>& g2) {
    const int x1S = joint5.axis(0).size;
    const int x2S = joint5.axis(1).size;
    const int wS = joint5.axis(2).size;
    const int u1S = joint5.axis(3).size;
    const int u2S = joint5.axis(4).size;
    const std::size_t gCells = static_cast<std::size_t>(wS) * static_cast<std::size_t>(u1S) *
                               static_cast<std::size_t>(u2S);
    g1.assign(gCells, 0);
    g2.assign(gCells, 0);

    const int keep1[] = {2, 3, 4, 0};
    const int keep2[] = {2, 3, 4, 1};
    const JointDist m1 = joint5.marginal(keep1);  // (w,u1,u2,x1)
    const JointDist m2 = joint5.marginal(keep2);

    for (std::size_t cell = 0; cell < gCells; ++cell) {
        double best1 = std::numeric_limits<double>::infinity();
        double best2 = std::numeric_limits<double>::infinity();
        for (int xh = 0; xh < x1S; ++xh) {
            double cost = 0.0;
            for (int x = 0; x < x1S; ++x)
                cost += m1[cell * static_cast<std::size_t>(x1S) + static_cast<std::size_t>(x)] *
                        src.d1_at(x, xh);
            if (cost < best1) {
                best1 = cost;
                g1[cell] = xh;
            }
        }
        for (int xh = 0; xh < x2S; ++xh) {
            double cost = 0.0;
            for (int x = 0; x < x2S; ++x)
                cost += m2[cell * static_cast<std::size_t>(x2S) + static_cast<std::size_t>(x)] *
                        src.d2_at(x, xh);
            if (cost < best2) {
                best2 = cost;
                g2[cell] = xh;
            }
        }
    }
}

namespace {

// Expected d_i(X_i, g_i(W,U1,U2)) under the coding joint.
void expected_distortions(const DistributedSource& src, const FlmcCodingSpec& spec,
                          const JointDist& joint5, double& ed1, double& ed2) {
    const int u1S = joint5.axis(3).size;
    const int u2S = joint5.axis(4).size;
    ed1 = ed2 = 0.0;
    std::vector<int> idx(5);
    for (std::size_t flat = 0; flat < joint5.cells(); ++flat) {
        const double p = joint5[flat];
        if (p == 0.0) continue;
        joint5.unflatten(flat, idx);
        const std::size_t g = (static_cast<std::size_t>(idx[2]) * static_cast<std::size_t>(u1S) +
                               static_cast<std::size_t>(idx[3])) *
                                  static_cast<std::size_t>(u2S) +
                              static_cast<std::size_t>(idx[4]);
        ed1 += p * src.d1_at(idx[0], spec.g1[g]);
        ed2 += p * src.d2_at(idx[1], spec.g2[g]);
    }
}

}  // namespace

CornerPair cc_alpha(const DistributedSource& src, const FlmcCodingSpec& spec) {
    if (spec.components.epsilon != 0.0)
        throw ValidationError("cc_alpha: components must be a common part (epsilon = 0)");
    const JointDist j = build_coding_joint(src, spec);
    const int aX1[] = {0}, aX2[] = {1}, aU1[] = {3}, aU2[] = {4};
    const int cWU2[] = {2, 4}, cWU1[] = {2, 3};
    const int both[] = {0, 1}, all3[] = {3, 4, 2};
    const double r1 = cond_mutual_info(j, aX1, aU1, cWU2);
    const double r2 = cond_mutual_info(j, aX2, aU2, cWU1);
    const double rSum = mutual_info(j, both, all3);
    double ed1 = 0.0, ed2 = 0.0;
    expected_distortions(src, spec, j, ed1, ed2);
    return make_corners(r1, r2, rSum, ed1, ed2);
}

CornerPair flmc_alpha(const DistributedSource& src, const FlmcCodingSpec& spec, long long n,
                      double tau, bool enforceRanges, FlmcCorrectionTerms* termsOut) {
    const JointDist pSW = build_psw(src, spec);
    const FlmcCorrectionTerms t =
        flmc_corrections(spec.components, pSW, n, tau, src.d1_max(), src.d2_max(),
                         spec.pU1.to_axes()[0].size, spec.pU2.to_axes()[0].size, enforceRanges);
    if (termsOut) *termsOut = t;

    const JointDist j = build_coding_joint(src, spec);
    const int aX1[] = {0}, aX2[] = {1}, aU1[] = {3}, aU2[] = {4};
    const int cWU2[] = {2, 4}, cWU1[] = {2, 3};
    const int both[] = {0, 1}, all3[] = {3, 4, 2};
    const double r1 = cond_mutual_info(j, aX1, aU1, cWU2) + t.eN + t.gammaN + t.lambdaN;
    const double r2 = cond_mutual_info(j, aX2, aU2, cWU1) + t.eN + t.gammaN;
    const double rSum =
        mutual_info(j, both, all3) + t.eN + t.gammaN + t.lambdaN + t.thetaN;
    double ed1 = 0.0, ed2 = 0.0;
    expected_distortions(src, spec, j, ed1, ed2);
    const double pen = 2.0 * t.x;
    return make_corners(r1, r2, rSum, ed1 + pen * t.dMax1, ed2 + pen * t.dMax2);
}

CornerPair btsi_alpha(const SourceWithSideInfo& src, const CondDist& pU1, const CondDist& pU2,
                      const std::vector<int>& g1, const std::vector<int>& g2) {
    if (pU1.from_axes().size() != 2 || pU1.from_axes()[0].size != src.x1.size ||
        pU1.from_axes()[1].size != src.y1.size)
        throw ValidationError("btsi_alpha: pU1 must map (X1, Y1)");
    if (pU2.from_axes().size() != 2 || pU2.from_axes()[0].size != src.x2.size ||
        pU2.from_axes()[1].size != src.y2.size)
        throw ValidationError("btsi_alpha: pU2 must map (X2, Y2)");
    const int u1S = pU1.to_axes()[0].size;
    const int u2S = pU2.to_axes()[0].size;
    const std::size_t gCells = static_cast<std::size_t>(u1S) * static_cast<std::size_t>(u2S) *
                               static_cast<std::size_t>(src.y1.size) *
                               static_cast<std::size_t>(src.y2.size);
    if (g1.size() != gCells || g2.size() != gCells)
        throw ValidationError("btsi_alpha: reconstruction maps must cover (U1, U2, Y1, Y2)");

    // Joint over (X1, X2, Y1, Y2, U1, U2).
    std::vector<Alphabet> axes = {src.x1, src.x2, src.y1, src.y2, Alphabet(u1S), Alphabet(u2S)};
    const JointDist j = JointDist::from_function(std::move(axes), [&](std::span<const int> i) {
        const int idx4[] = {i[0], i[1], i[2], i[3]};
        const double base = src.pmf.at(idx4);
        if (base == 0.0) return 0.0;
        const double k1 = pU1.kernel(static_cast<std::size_t>(i[0]) *
                                             static_cast<std::size_t>(src.y1.size) +
                                         static_cast<std::size_t>(i[2]),
                                     static_cast<std::size_t>(i[4]));
        const double k2 = pU2.kernel(static_cast<std::size_t>(i[1]) *
                                             static_cast<std::size_t>(src.y2.size) +
                                         static_cast<std::size_t>(i[3]),
                                     static_cast<std::size_t>(i[5]));
        return base * k1 * k2;
    });

    const int aX1[] = {0}, aX2[] = {1}, aU1[] = {4}, aU2[] = {5};
    const int cU2Y[] = {5, 2, 3}, cU1Y[] = {4, 2, 3}, cY[] = {2, 3};
    const int bothX[] = {0, 1}, bothU[] = {4, 5};
    const double r1 = cond_mutual_info(j, aX1, aU1, cU2Y);
    const double r2 = cond_mutual_info(j, aX2, aU2, cU1Y);
    const double rSum = cond_mutual_info(j, bothX, bothU, cY);

    double ed1 = 0.0, ed2 = 0.0;
    std::vector<int> idx(6);
    for (std::size_t flat = 0; flat < j.cells(); ++flat) {
        const double p = j[flat];
        if (p == 0.0) continue;
        j.unflatten(flat, idx);
        const std::size_t g =
            ((static_cast<std::size_t>(idx[4]) * static_cast<std::size_t>(u2S) +
              static_cast<std::size_t>(idx[5])) *
                 static_cast<std::size_t>(src.y1.size) +
             static_cast<std::size_t>(idx[2])) *
                static_cast<std::size_t>(src.y2.size) +
            static_cast<std::size_t>(idx[3]);
        ed1 += p * src.d1_at(idx[0], g1[g]);
        ed2 += p * src.d2_at(idx[1], g2[g]);
    }
    return make_corners(r1, r2, rSum, ed1, ed2);
}

double McmlConditionReport::worst() const {
    return std::max({cond1, cond2, cond3, cond4, cond5});
}

CornerPair mcml_alpha(const DistributedSource& src, const ComponentPair& components,
                      const JointDist& pP6, const CondDist& pW, const CondDist& pU1,
                      const CondDist& pU2, const FlmcCorrectionTerms& corrections,
                      const std::vector<int>& g1, const std::vector<int>& g2,
                      McmlConditionReport* report, double condTol) {
    const int x1S = src.x1.size, x2S = src.x2.size;
    const int wS = pW.to_axes()[0].size;
    const int u1S = pU1.to_axes()[0].size, u2S = pU2.to_axes()[0].size;
    if (pP6.rank() != 6 || pP6.axis(0).size != x1S || pP6.axis(1).size != x2S ||
        pP6.axis(2).size != wS || pP6.axis(3).size != wS || pP6.axis(4).size != u1S ||
        pP6.axis(5).size != u2S)
        throw ValidationError("mcml_alpha: joint axes must be (X1, X2, W'1, W2, U1, U2)");

    McmlConditionReport rep;

    // Condition 1: P'(w1, u1 | x1, x2) factorizes through the reference kernels.
    {
        const int keep[] = {0, 1, 2, 4};
        const JointDist m = pP6.marginal(keep);
        for (int x1 = 0; x1 < x1S; ++x1)
            for (int x2 = 0; x2 < x2S; ++x2) {
                const int idx2[] = {x1, x2};
                const double px = src.pmf.at(idx2);
                if (px <= 0.0) continue;
                const auto s1 = static_cast<std::size_t>(components.f1[static_cast<std::size_t>(x1)]);
                for (int w = 0; w < wS; ++w)
                    for (int u1 = 0; u1 < u1S; ++u1) {
                        const int idx[] = {x1, x2, w, u1};
                        const double lhs = m.at(idx) / px;
                        const double rhs =
                            pW.kernel(s1, static_cast<std::size_t>(w)) *
                            pU1.kernel(static_cast<std::size_t>(x1) * static_cast<std::size_t>(wS) +
                                           static_cast<std::size_t>(w),
                                       static_cast<std::size_t>(u1));
                        rep.cond1 = std::max(rep.cond1, std::abs(lhs - rhs));
                    }
            }
    }

    // Condition 2: P'(u2 | x2, w2) equals the reference kernel where defined.
    {
        const int keep[] = {1, 3, 5};
        const JointDist m = pP6.marginal(keep);
        const int keep2[] = {1, 3};
        const JointDist m2 = pP6.marginal(keep2);
        for (int x2 = 0; x2 < x2S; ++x2)
            for (int w = 0; w < wS; ++w) {
                const int idxc[] = {x2, w};
                const double pc = m2.at(idxc);
                if (pc <= 0.0) continue;
                for (int u2 = 0; u2 < u2S; ++u2) {
                    const int idx[] = {x2, w, u2};
                    const double lhs = m.at(idx) / pc;
                    const double rhs =
                        pU2.kernel(static_cast<std::size_t>(x2) * static_cast<std::size_t>(wS) +
                                       static_cast<std::size_t>(w),
                                   static_cast<std::size_t>(u2));
                    rep.cond2 = std::max(rep.cond2, std::abs(lhs - rhs));
                }
            }
    }

    // Condition 3: P'(W'1 = W2, S1 = S2) >= p(tau)(1 - delta_n).
    {
        const int keep[] = {0, 1, 2, 3};
        const JointDist m = pP6.marginal(keep);
        double agree = 0.0;
        std::vector<int> idx(4);
        for (std::size_t flat = 0; flat < m.cells(); ++flat) {
            if (m[flat] == 0.0) continue;
            m.unflatten(flat, idx);
            if (idx[2] == idx[3] &&
                components.f1[static_cast<std::size_t>(idx[0])] ==
                    components.f2[static_cast<std::size_t>(idx[1])])
                agree += m[flat];
        }
        rep.cond3 = std::max(0.0, corrections.pTau * (1.0 - corrections.deltaN) - agree);
    }

    // Condition 4: long-chain factorization of (U1, U2) given (X1, W'1, X2, W2).
    {
        const int keepA[] = {0, 2, 4};
        const JointDist a3 = pP6.marginal(keepA);
        const int keepA2[] = {0, 2};
        const JointDist a2 = pP6.marginal(keepA2);
        const int keepB[] = {1, 3, 5};
        const JointDist b3 = pP6.marginal(keepB);
        const int keepB2[] = {1, 3};
        const JointDist b2 = pP6.marginal(keepB2);
        const int keep4[] = {0, 1, 2, 3};
        const JointDist m4 = pP6.marginal(keep4);
        std::vector<int> idx(6);
        for (std::size_t flat = 0; flat < pP6.cells(); ++flat) {
            pP6.unflatten(flat, idx);
            const int idx4[] = {idx[0], idx[1], idx[2], idx[3]};
            const double p4 = m4.at(idx4);
            if (p4 <= 0.0) continue;
            const int ia3[] = {idx[0], idx[2], idx[4]};
            const int ia2[] = {idx[0], idx[2]};
            const int ib3[] = {idx[1], idx[3], idx[5]};
            const int ib2[] = {idx[1], idx[3]};
            const double ka = a2.at(ia2) > 0.0 ? a3.at(ia3) / a2.at(ia2) : 0.0;
            const double kb = b2.at(ib2) > 0.0 ? b3.at(ib3) / b2.at(ib2) : 0.0;
            rep.cond4 = std::max(rep.cond4, std::abs(pP6[flat] / p4 - ka * kb));
        }
    }

    // Condition 5: (W'1, W2) - (S1, S2) - (X1, X2).
    {
        const int keep4[] = {0, 1, 2, 3};
        const JointDist m4 = pP6.marginal(keep4);
        // Aggregate P'(w1, w2 | s1, s2) over each (s1, s2) fiber.
        const int sS = components.s.size;
        std::vector<double> fiberMass(static_cast<std::size_t>(sS) * static_cast<std::size_t>(sS), 0.0);
        std::vector<double> fiberJoint(static_cast<std::size_t>(sS) * static_cast<std::size_t>(sS) *
                                           static_cast<std::size_t>(wS) * static_cast<std::size_t>(wS),
                                       0.0);
        std::vector<int> idx(4);
        for (std::size_t flat = 0; flat < m4.cells(); ++flat) {
            m4.unflatten(flat, idx);
            const auto s1 = static_cast<std::size_t>(components.f1[static_cast<std::size_t>(idx[0])]);
            const auto s2 = static_cast<std::size_t>(components.f2[static_cast<std::size_t>(idx[1])]);
            const std::size_t f = s1 * static_cast<std::size_t>(sS) + s2;
            fiberMass[f] += m4[flat];
            fiberJoint[(f * static_cast<std::size_t>(wS) + static_cast<std::size_t>(idx[2])) *
                           static_cast<std::size_t>(wS) +
                       static_cast<std::size_t>(idx[3])] += m4[flat];
        }
        for (std::size_t flat = 0; flat < m4.cells(); ++flat) {
            m4.unflatten(flat, idx);
            const int idx2[] = {idx[0], idx[1]};
            const double px = src.pmf.at(idx2);
            if (px <= 0.0) continue;
            const auto s1 = static_cast<std::size_t>(components.f1[static_cast<std::size_t>(idx[0])]);
            const auto s2 = static_cast<std::size_t>(components.f2[static_cast<std::size_t>(idx[1])]);
            const std::size_t f = s1 * static_cast<std::size_t>(sS) + s2;
            if (fiberMass[f] <= 0.0) continue;
            const double perX = m4[flat] / px;
            const double perS =
                fiberJoint[(f * static_cast<std::size_t>(wS) + static_cast<std::size_t>(idx[2])) *
                               static_cast<std::size_t>(wS) +
                           static_cast<std::size_t>(idx[3])] /
                fiberMass[f];
            rep.cond5 = std::max(rep.cond5, std::abs(perX - perS));
        }
    }

    if (report) *report = rep;
    if (!rep.ok(condTol)) {
        std::string msg = "mcml_alpha: induced-joint consistency violation, residuals";
        msg += " c1=" + std::to_string(rep.cond1) + " c2=" + std::to_string(rep.cond2) +
               " c3=" + std::to_string(rep.cond3) + " c4=" + std::to_string(rep.cond4) +
               " c5=" + std::to_string(rep.cond5);
        throw ValidationError(msg);
    }

    const int aX1[] = {0}, aX2[] = {1}, aU1[] = {4}, aU2[] = {5};
    const int cU2WW[] = {5, 2, 3}, cU1WW[] = {4, 2, 3}, cWW[] = {2, 3};
    const double r1 =
        cond_mutual_info(pP6, aX1, aU1, cU2WW) + corrections.eN + corrections.lambdaN;
    const double r2 = cond_mutual_info(pP6, aX2, aU2, cU1WW) + corrections.eN;

    // I(W'1; S1) with S1 = f1(X1).
    const int keepWX[] = {2, 0};
    const JointDist mWX = pP6.marginal(keepWX);
    const int sS = components.s.size;
    std::vector<double> pws(static_cast<std::size_t>(wS) * static_cast<std::size_t>(sS), 0.0);
    for (int w = 0; w < wS; ++w)
        for (int x1 = 0; x1 < x1S; ++x1) {
            const int idx[] = {w, x1};
            pws[static_cast<std::size_t>(w) * static_cast<std::size_t>(sS) +
                static_cast<std::size_t>(components.f1[static_cast<std::size_t>(x1)])] += mWX.at(idx);
        }
    const JointDist jWS({Alphabet(wS), Alphabet(sS)}, std::move(pws));
    const int aW[] = {0}, aS[] = {1};
    const double iWS = mutual_info(jWS, aW, aS);

    const double rSum = iWS + cond_mutual_info(pP6, aX1, aU1, cWW) +
                        cond_mutual_info(pP6, aX2, aU2, cWW) -
                        cond_mutual_info(pP6, aU1, aU2, cWW) + corrections.eN +
                        corrections.lambdaN + corrections.thetaN;

    // Distortions with 4-argument reconstructions g(w1, w2, u1, u2).
    const std::size_t gCells = static_cast<std::size_t>(wS) * static_cast<std::size_t>(wS) *
                               static_cast<std::size_t>(u1S) * static_cast<std::size_t>(u2S);
    if (g1.size() != gCells || g2.size() != gCells)
        throw ValidationError("mcml_alpha: reconstruction maps must cover (W'1, W2, U1, U2)");
    double ed1 = 0.0, ed2 = 0.0;
    std::vector<int> idx(6);
    for (std::size_t flat = 0; flat < pP6.cells(); ++flat) {
        const double p = pP6[flat];
        if (p == 0.0) continue;
        pP6.unflatten(flat, idx);
        const std::size_t g =
            ((static_cast<std::size_t>(idx[2]) * static_cast<std::size_t>(wS) +
              static_cast<std::size_t>(idx[3])) *
                 static_cast<std::size_t>(u1S) +
             static_cast<std::size_t>(idx[4])) *
                static_cast<std::size_t>(u2S) +
            static_cast<std::size_t>(idx[5]);
        ed1 += p * src.d1_at(idx[0], g1[g]);
        ed2 += p * src.d2_at(idx[1], g2[g]);
    }
    return make_corners(r1, r2, rSum, ed1, ed2);
}

RegionBoundary assemble_region(const std::vector<TaggedCorner>& corners, double fixedD1,
                               double fixedD2, bool hull) {
    if (corners.empty()) throw ValidationError("assemble_region: no corners");
    std::vector<BoundaryPoint> pts;
    for (const auto& c : corners)
        if (c.rd.d1 <= fixedD1 + 1e-12 && c.rd.d2 <= fixedD2 + 1e-12)
            pts.push_back({c.rd.r1, c.rd.r2, c.provenanceId});
    if (pts.empty())
        throw InfeasibleError("assemble_region: no corner meets the fixed distortions");

    std::sort(pts.begin(), pts.end(), [](const BoundaryPoint& a, const BoundaryPoint& b) {
        if (a.r1 != b.r1) return a.r1 < b.r1;
        return a.r2 < b.r2;
    });
    // Dominance filter: after the r1-sort, keep strictly decreasing r2.
    std::vector<BoundaryPoint> front;
    for (const auto& p : pts) {
        if (!front.empty() && front.back().r1 == p.r1) continue;  // same r1, larger r2
        if (front.empty() || p.r2 < front.back().r2) front.push_back(p);
    }

    if (hull && front.size() > 2) {
        // Lower convex hull (time sharing) over the decreasing staircase.
        std::vector<BoundaryPoint> h;
        for (const auto& p : front) {
            while (h.size() >= 2) {
                const auto& a = h[h.size() - 2];
                const auto& b = h[h.size() - 1];
                const double cross =
                    (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
                if (cross <= 0.0)
                    h.pop_back();  // b above or on chord a-p
                else
                    break;
            }
            h.push_back(p);
        }
        front = std::move(h);
    }

    RegionBoundary rb;
    rb.fixedD1 = fixedD1;
    rb.fixedD2 = fixedD2;
    rb.points = std::move(front);
    rb.hulled = hull;
    return rb;
}

namespace {

// One-sided Chebyshev distance from p to the set of points on the outer
// polyline that dominate it; <= 0 means p is dominated outright.
double chebyshev_shortfall(const RegionBoundary& outer, const BoundaryPoint& p) {
    double best = std::numeric_limits<double>::infinity();
    const auto& pts = outer.points;
    auto gap = [&](double r1, double r2) { return std::max(r1 - p.r1, r2 - p.r2); };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        best = std::min(best, gap(pts[i].r1, pts[i].r2));
        if (i + 1 < pts.size()) {
            // Along segment q(t), the max of the two linear gaps is minimized
            // where they cross.
            const double a1 = pts[i].r1, a2 = pts[i].r2;
            const double b1 = pts[i + 1].r1, b2 = pts[i + 1].r2;
            const double num = (p.r2 - a2) - (p.r1 - a1);
            const double den = (b1 - a1) - (b2 - a2);
            if (den != 0.0) {
                const double tt = num / den;
                if (tt > 0.0 && tt < 1.0)
                    best = std::min(best, gap(a1 + tt * (b1 - a1), a2 + tt * (b2 - a2)));
            }
        }
    }
    // The region is the up-closure of the polyline, so the minimal witnesses
    // all lie on the vertices and segments enumerated above.
    return best;
}

}  // namespace

ContainmentResult region_contains(const RegionBoundary& outer, const RegionBoundary& inner,
                                  double slack) {
    if (std::abs(outer.fixedD1 - inner.fixedD1) > 1e-12 ||
        std::abs(outer.fixedD2 - inner.fixedD2) > 1e-12)
        throw ValidationError("region_contains: fixed distortions differ");
    ContainmentResult res;
    res.contains = true;
    res.maxViolation = -std::numeric_limits<double>::infinity();
    for (const auto& p : inner.points) {
        const double v = chebyshev_shortfall(outer, p) - slack;
        res.maxViolation = std::max(res.maxViolation, v);
        if (v > 0.0) res.contains = false;
    }
    return res;
}

}  // namespace rdlab
