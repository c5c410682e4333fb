#include "rdlab/correction.hpp"

#include "rdlab/info.hpp"

#include <cmath>
#include <limits>

namespace rdlab {

namespace {

JointDist counts_to_type(std::vector<double> acc, const Alphabet& sA, const Alphabet& wA) {
    double total = 0.0;
    for (double v : acc) total += v;
    for (double& v : acc) v /= total;
    return JointDist({sA, wA}, std::move(acc));
}

}  // namespace

JointDist exact_average_type(const QuantizerCodebook& q, const JointDist& pS, std::uint64_t cap) {
    const int n = q.n();
    const auto sS = static_cast<std::size_t>(q.s_alphabet().size);
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);
    if (pS.rank() != 1 || pS.axis(0).size != static_cast<int>(sS))
        throw ValidationError("exact_average_type: pS axis mismatch");
    if (std::pow(static_cast<double>(sS), n) > static_cast<double>(cap))
        throw CapExceededError("exact_average_type: |S|^n exceeds enumeration cap");

    std::vector<double> acc(sS * wS, 0.0);
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    while (true) {
        double prob = 1.0;
        for (int j = 0; j < n; ++j)
            prob *= pS[static_cast<std::size_t>(block[static_cast<std::size_t>(j)])];
        if (prob > 0.0) {
            const auto& cw = q.codeword(q.encode(block));
            const double w = prob / static_cast<double>(n);
            for (int j = 0; j < n; ++j)
                acc[static_cast<std::size_t>(block[static_cast<std::size_t>(j)]) * wS +
                    static_cast<std::size_t>(cw[static_cast<std::size_t>(j)])] += w;
        }
        int pos = n - 1;
        while (pos >= 0 && ++block[static_cast<std::size_t>(pos)] == static_cast<int>(sS)) {
            block[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return counts_to_type(std::move(acc), q.s_alphabet(), q.w_alphabet());
}

JointDist sampled_average_type(const QuantizerCodebook& q, const JointDist& pS, long long samples,
                               std::uint64_t seed) {
    if (samples < 1) throw ValidationError("sampled_average_type: samples must be >= 1");
    const int n = q.n();
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);
    StreamRng rng(StreamRng::derive(seed, 0x74797065));
    std::vector<double> acc(static_cast<std::size_t>(q.s_alphabet().size) * wS, 0.0);
    std::vector<int> block(static_cast<std::size_t>(n));
    for (long long t = 0; t < samples; ++t) {
        for (int j = 0; j < n; ++j)
            block[static_cast<std::size_t>(j)] = rng.sample(pS.probs());
        const auto& cw = q.codeword(q.encode(block));
        for (int j = 0; j < n; ++j)
            acc[static_cast<std::size_t>(block[static_cast<std::size_t>(j)]) * wS +
                static_cast<std::size_t>(cw[static_cast<std::size_t>(j)])] += 1.0;
    }
    return counts_to_type(std::move(acc), q.s_alphabet(), q.w_alphabet());
}

namespace {

// Rescales each S-row of a measured type so its marginal matches P_S exactly;
// the construction consumes the conditional law of W given S, and the true
// average type's S-marginal is P_S by definition.
JointDist condition_on_source(const JointDist& avg, const JointDist& pS) {
    const auto sS = static_cast<std::size_t>(avg.axis(0).size);
    const auto wS = static_cast<std::size_t>(avg.axis(1).size);
    std::vector<double> out(sS * wS, 0.0);
    for (std::size_t a = 0; a < sS; ++a) {
        double rowMass = 0.0;
        for (std::size_t b = 0; b < wS; ++b) rowMass += avg[a * wS + b];
        if (rowMass <= 0.0) {
            if (pS[a] > 0.0)
                throw ValidationError(
                    "build_correction: no samples observed for a supported source symbol");
            continue;
        }
        for (std::size_t b = 0; b < wS; ++b) out[a * wS + b] = avg[a * wS + b] / rowMass * pS[a];
    }
    return JointDist({avg.axis(0), avg.axis(1)}, std::move(out));
}

}  // namespace

CorrectionChannel build_correction(const QuantizerCodebook& q, const JointDist& pS, bool exactMode,
                                   long long samples, std::uint64_t seed, std::uint64_t cap) {
    const JointDist& target = q.target_sw();
    const auto sS = static_cast<std::size_t>(q.s_alphabet().size);
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);

    const JointDist avg = condition_on_source(
        exactMode ? exact_average_type(q, pS, cap) : sampled_average_type(q, pS, samples, seed),
        pS);

    std::vector<double> gamma(sS * wS);
    for (std::size_t c = 0; c < sS * wS; ++c) gamma[c] = avg[c] - target[c];

    // Row-wise keep probabilities: p0(a) = min_b target(a,b) / avg(a,b), the
    // min over cells the quantizer actually produces.
    std::vector<double> p0(sS, 1.0);
    for (std::size_t a = 0; a < sS; ++a) {
        double ps = 0.0;
        for (std::size_t b = 0; b < wS; ++b) ps += avg[a * wS + b];
        if (ps <= 0.0) {
            if (pS[a] > 0.0)
                throw GateError("build_correction: zero denominator in a supported row");
            continue;  // unreachable source symbol, keep p0 = 1
        }
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < wS; ++b) {
            if (avg[a * wS + b] <= 0.0) continue;
            m = std::min(m, target[a * wS + b] / avg[a * wS + b]);
        }
        p0[a] = std::min(1.0, m);
    }

    // Kernel rows: T = 0 keeps W; T = b+1 writes symbol b with probability
    // (target(a,b) - avg(a,b) p0(a)) / P_S(a).
    std::vector<double> kernel(sS * (wS + 1), 0.0);
    for (std::size_t a = 0; a < sS; ++a) {
        double ps = 0.0;
        for (std::size_t b = 0; b < wS; ++b) ps += target[a * wS + b];
        kernel[a * (wS + 1)] = p0[a];
        if (ps <= 0.0) continue;
        for (std::size_t b = 0; b < wS; ++b) {
            const double v = (target[a * wS + b] - avg[a * wS + b] * p0[a]) / ps;
            kernel[a * (wS + 1) + b + 1] = std::max(0.0, v);
        }
        // Rows sum to 1 by the validity argument; anything beyond roundoff is
        // a construction defect.
        double rowSum = 0.0;
        for (std::size_t t = 0; t <= wS; ++t) rowSum += kernel[a * (wS + 1) + t];
        if (std::abs(rowSum - 1.0) > 1e-9)
            throw GateError("build_correction: kernel row does not sum to 1");
        kernel[a * (wS + 1)] += 1.0 - rowSum;  // roundoff into T = 0
    }

    CorrectionChannel c{
        CondDist({q.s_alphabet()}, {Alphabet(static_cast<int>(wS) + 1)}, std::move(kernel)),
        std::move(gamma),
        avg,
        avg,  // placeholder, replaced below
        exactMode,
        0.0};

    // Corrected average joint: P'(a,b) = P'_{S,T}(a,b) + P_S(a) p0(a) avg(b|a).
    // Sampled mode evaluates against an independent second estimate so the
    // reported residual reflects estimation error.
    const JointDist evalAvg =
        exactMode ? avg
                  : condition_on_source(
                        sampled_average_type(q, pS, samples, StreamRng::derive(seed, 2)), pS);
    std::vector<double> corrected(sS * wS, 0.0);
    for (std::size_t a = 0; a < sS; ++a) {
        double psTarget = 0.0;
        for (std::size_t b = 0; b < wS; ++b) psTarget += target[a * wS + b];
        for (std::size_t b = 0; b < wS; ++b) {
            const double overwrite = psTarget * c.pTgivenS.kernel(a, b + 1);
            const double keep = p0[a] * evalAvg[a * wS + b];
            corrected[a * wS + b] = overwrite + keep;
        }
    }
    double residual = 0.0;
    for (std::size_t cix = 0; cix < sS * wS; ++cix)
        residual = std::max(residual, std::abs(corrected[cix] - target[cix]));
    c.maxResidual = residual;
    double totalCorr = 0.0;
    for (double v : corrected) totalCorr += v;
    for (double& v : corrected) v /= totalCorr;
    c.correctedJoint = JointDist({q.s_alphabet(), q.w_alphabet()}, std::move(corrected));

    if (exactMode && residual > 1e-10)
        throw GateError("build_correction: exact-mode residual exceeds 1e-10");
    return c;
}

CorrectionRate correction_rate(const CorrectionChannel& c, const JointDist& pS, double pTau) {
    const auto sS = static_cast<std::size_t>(c.pTgivenS.from_axes()[0].size);
    const auto tS = static_cast<std::size_t>(c.pTgivenS.to_axes()[0].size);
    if (pS.rank() != 1 || pS.axis(0).size != static_cast<int>(sS))
        throw ValidationError("correction_rate: pS axis mismatch");
    std::vector<double> pt(tS, 0.0);
    for (std::size_t a = 0; a < sS; ++a)
        for (std::size_t t = 0; t < tS; ++t) pt[t] += pS[a] * c.pTgivenS.kernel(a, t);
    CorrectionRate r;
    for (double v : pt)
        if (v > 0.0) r.hT -= v * std::log2(v);
    r.p0 = pt[0];
    r.lambdaBound = binary_entropy(pTau) + (1.0 - pTau) * std::log2(static_cast<double>(tS - 1));
    r.boundApplies = r.p0 >= pTau && pTau >= 0.5;
    r.holds = !r.boundApplies || r.hT <= r.lambdaBound + 1e-12;
    return r;
}

}  // namespace rdlab
