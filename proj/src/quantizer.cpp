#include "rdlab/quantizer.hpp"

#include "rdlab/common.hpp"
#include "rdlab/flmc_terms.hpp"
#include "rdlab/info.hpp"

#include <algorithm>
#include <cmath>

namespace rdlab {

namespace {

JointDist make_target(const JointDist& pS, const CondDist& pWgivenS) {
    if (pS.rank() != 1) throw ValidationError("quantizer: pS must be single-axis");
    if (pWgivenS.from_axes().size() != 1 || pWgivenS.from_axes()[0].size != pS.axis(0).size)
        throw ValidationError("quantizer: kernel must map S");
    const auto sS = static_cast<std::size_t>(pS.axis(0).size);
    const auto wS = static_cast<std::size_t>(pWgivenS.to_axes()[0].size);
    std::vector<double> p(sS * wS);
    for (std::size_t s = 0; s < sS; ++s)
        for (std::size_t w = 0; w < wS; ++w) p[s * wS + w] = pS[s] * pWgivenS.kernel(s, w);
    return JointDist({pS.axis(0), pWgivenS.to_axes()[0]}, std::move(p));
}

// Draws `count` members (with replacement) from the tauHat-typical set of the
// W marginal, preserving draw order.
std::vector<std::vector<int>> draw_codewords(const JointDist& pW, int n, double tauHat, int count,
                                             StreamRng& rng) {
    const std::uint64_t setSize = typical_count(pW, n, tauHat);
    if (setSize == 0) throw InfeasibleError("quantizer: typical set of W is empty");
    std::vector<std::uint64_t> picks(static_cast<std::size_t>(count));
    for (auto& v : picks) v = rng.next_below(setSize);
    std::vector<std::uint64_t> sorted = picks;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    // Second enumeration pass collects the selected members.
    std::vector<std::vector<int>> members(sorted.size());
    std::uint64_t index = 0;
    std::size_t cursor = 0;
    for_each_typical(pW, n, tauHat, [&](std::span<const std::vector<int>> rows) {
        if (cursor < sorted.size() && index == sorted[cursor]) {
            members[cursor] = rows[0];
            ++cursor;
        }
        ++index;
    });

    std::vector<std::vector<int>> out(static_cast<std::size_t>(count));
    for (std::size_t k = 0; k < picks.size(); ++k) {
        const auto at = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), picks[k]) - sorted.begin());
        out[k] = members[at];
    }
    return out;
}

}  // namespace

QuantizerCodebook::QuantizerCodebook(int n, Alphabet sAlpha, Alphabet wAlpha, JointDist targetSW,
                                     std::vector<std::vector<int>> codewords, EncoderRule rule,
                                     double tauHat, bool formulaTheta)
    : n_(n), s_(std::move(sAlpha)), w_(std::move(wAlpha)), targetSW_(std::move(targetSW)),
      codewords_(std::move(codewords)), rule_(rule), tauHat_(tauHat), formulaTheta_(formulaTheta) {
    if (n_ < 1) throw ValidationError("QuantizerCodebook: n must be >= 1");
    if (codewords_.empty()) throw ValidationError("QuantizerCodebook: empty codebook");
    for (const auto& cw : codewords_)
        if (static_cast<int>(cw.size()) != n_)
            throw ValidationError("QuantizerCodebook: codeword length mismatch");
    if (rule_ == EncoderRule::MinHamming && s_.size != w_.size)
        throw ValidationError("QuantizerCodebook: min-Hamming rule needs |S| = |W|");
}

double QuantizerCodebook::rate_per_symbol() const {
    return std::log2(static_cast<double>(codewords_.size())) / static_cast<double>(n_);
}

int QuantizerCodebook::encode(std::span<const int> sBlock) const {
    if (static_cast<int>(sBlock.size()) != n_)
        throw ValidationError("QuantizerCodebook::encode: block length mismatch");
    if (rule_ == EncoderRule::MinHamming) {
        int best = 0;
        int bestDist = n_ + 1;
        for (int i = 0; i < theta(); ++i) {
            const auto& cw = codewords_[static_cast<std::size_t>(i)];
            int dist = 0;
            for (int j = 0; j < n_; ++j)
                dist += sBlock[static_cast<std::size_t>(j)] != cw[static_cast<std::size_t>(j)];
            if (dist < bestDist) {
                bestDist = dist;
                best = i;
            }
        }
        return best;
    }
    // First jointly typical index, fallback 0.
    const auto wS = static_cast<std::size_t>(w_.size);
    const std::size_t cells = static_cast<std::size_t>(s_.size) * wS;
    std::vector<int> counts(cells);
    const double denom = static_cast<double>(cells);
    for (int i = 0; i < theta(); ++i) {
        const auto& cw = codewords_[static_cast<std::size_t>(i)];
        std::fill(counts.begin(), counts.end(), 0);
        for (int j = 0; j < n_; ++j)
            ++counts[static_cast<std::size_t>(sBlock[static_cast<std::size_t>(j)]) * wS +
                     static_cast<std::size_t>(cw[static_cast<std::size_t>(j)])];
        bool ok = true;
        for (std::size_t c = 0; c < cells && ok; ++c) {
            const double freq = static_cast<double>(counts[c]) / static_cast<double>(n_);
            if (targetSW_[c] == 0.0)
                ok = counts[c] == 0;
            else
                ok = std::abs(freq - targetSW_[c]) <= tauHat_ / denom;
        }
        if (ok) return i;
    }
    return 0;
}

QuantizerCodebook build_quantizer(const JointDist& pS, const CondDist& pWgivenS, int n, double tau,
                                  EncoderRule rule, std::uint64_t seed, std::uint64_t thetaCap) {
    const JointDist target = make_target(pS, pWgivenS);
    const int aS[] = {0}, aW[] = {1};
    const double iWS = mutual_info(target, aW, aS);
    const double th = theta_n(target, n, tau);
    const double exponent = static_cast<double>(n) * (iWS + th - 1.0 / static_cast<double>(n));
    const double thetaReal = std::ceil(std::exp2(exponent));
    if (!(thetaReal >= 1.0)) throw ValidationError("build_quantizer: degenerate codebook size");
    if (thetaReal > static_cast<double>(thetaCap))
        throw CapExceededError("build_quantizer: Theta exceeds codebook cap");
    const int theta = static_cast<int>(thetaReal);

    const double tauHat = tau * (pS.axis(0).size + pWgivenS.to_axes()[0].size);
    const int keepW[] = {1};
    const JointDist pW = target.marginal(keepW);
    StreamRng rng(StreamRng::derive(seed, 0x636f6465));  // codeword stream
    auto codewords = draw_codewords(pW, n, tauHat, theta, rng);

    QuantizerCodebook q(n, pS.axis(0), pWgivenS.to_axes()[0], target, std::move(codewords), rule,
                        tauHat, true);
    // Rate accounting, asserted on every formula-sized build.
    if (q.rate_per_symbol() > iWS + th + 1e-12)
        throw GateError("build_quantizer: rate exceeds I(W;S) + theta_n");
    return q;
}

QuantizerCodebook build_quantizer_fixed(const JointDist& pS, const CondDist& pWgivenS, int n,
                                        double tau, int theta, EncoderRule rule,
                                        std::uint64_t seed) {
    if (theta < 1) throw ValidationError("build_quantizer_fixed: theta must be >= 1");
    if (static_cast<std::uint64_t>(theta) > kCodebookCap)
        throw CapExceededError("build_quantizer_fixed: Theta exceeds codebook cap");
    const JointDist target = make_target(pS, pWgivenS);
    const double tauHat = tau * (pS.axis(0).size + pWgivenS.to_axes()[0].size);
    const int keepW[] = {1};
    const JointDist pW = target.marginal(keepW);
    StreamRng rng(StreamRng::derive(seed, 0x636f6465));
    auto codewords = draw_codewords(pW, n, tauHat, theta, rng);
    return QuantizerCodebook(n, pS.axis(0), pWgivenS.to_axes()[0], target, std::move(codewords),
                             rule, tauHat, false);
}

CoveringResult measure_covering(const QuantizerCodebook& q, const JointDist& pS, double phi,
                                double phiBound, bool exactMode, long long samples,
                                std::uint64_t seed, std::uint64_t cap) {
    if (pS.rank() != 1 || pS.axis(0).size != q.s_alphabet().size)
        throw ValidationError("measure_covering: pS axis mismatch");
    CoveringResult res;
    res.phi = phi;
    res.phiBound = phiBound;
    res.vacuous = phiBound >= 1.0;
    res.exact = exactMode;

    const int n = q.n();
    const auto sS = static_cast<std::size_t>(pS.axis(0).size);
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);
    const JointDist& target = q.target_sw();

    auto exceeds = [&](std::span<const int> block) {
        const int idx = q.encode(block);
        const auto& cw = q.codeword(idx);
        std::vector<int> counts(sS * wS, 0);
        for (int j = 0; j < n; ++j)
            ++counts[static_cast<std::size_t>(block[static_cast<std::size_t>(j)]) * wS +
                     static_cast<std::size_t>(cw[static_cast<std::size_t>(j)])];
        double worst = 0.0;
        for (std::size_t c = 0; c < sS * wS; ++c)
            worst = std::max(worst, std::abs(static_cast<double>(counts[c]) / n - target[c]));
        return worst > phi;
    };

    if (exactMode) {
        if (std::pow(static_cast<double>(sS), n) > static_cast<double>(cap))
            throw CapExceededError("measure_covering: |S|^n exceeds enumeration cap");
        std::vector<int> block(static_cast<std::size_t>(n), 0);
        double fail = 0.0;
        while (true) {
            double prob = 1.0;
            for (int j = 0; j < n; ++j)
                prob *= pS[static_cast<std::size_t>(block[static_cast<std::size_t>(j)])];
            if (prob > 0.0 && exceeds(block)) fail += prob;
            int pos = n - 1;
            while (pos >= 0 && ++block[static_cast<std::size_t>(pos)] == static_cast<int>(sS)) {
                block[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        res.failureProb = fail;
        res.radius = 0.0;
        return res;
    }

    if (samples < 1) throw ValidationError("measure_covering: samples must be >= 1 in sampled mode");
    StreamRng rng(StreamRng::derive(seed, 0x636f7665));
    std::vector<int> block(static_cast<std::size_t>(n));
    long long failures = 0;
    for (long long t = 0; t < samples; ++t) {
        for (int j = 0; j < n; ++j)
            block[static_cast<std::size_t>(j)] = rng.sample(pS.probs());
        if (exceeds(block)) ++failures;
    }
    res.failureProb = static_cast<double>(failures) / static_cast<double>(samples);
    // Two-sided Hoeffding at 99%.
    res.radius = std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(samples)));
    return res;
}

}  // namespace rdlab
