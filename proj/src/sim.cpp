#include "rdlab/sim.hpp"

#include "rdlab/flmc_terms.hpp"
#include "rdlab/info.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

namespace rdlab {

namespace {

enum Purpose : std::uint64_t {
    kSourceDraw = 1,
    kPermutation = 2,
    kTDraw = 3,
    kShuffleTest = 4,
    kCodebook = 5,
    kSecondLayer = 6,
};

void run_trials(int trials, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) body(t);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(threads, trials);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) body(t);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

double normal_upper_quantile(double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw ValidationError("normal_upper_quantile: alpha must be in (0,1)");
    double lo = 0.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * std::erfc(mid / std::sqrt(2.0)) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

InterleaveResult interleave_and_induce(const QuantizerCodebook& q, const CorrectionChannel& c,
                                       const DistributedSource& src,
                                       const ComponentPair& components, long long m,
                                       std::uint64_t seed) {
    if (m < 2) throw ValidationError("interleave_and_induce: m must be >= 2");
    const int n = q.n();
    const auto x1S = static_cast<std::size_t>(src.x1.size);
    const auto x2S = static_cast<std::size_t>(src.x2.size);
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);
    if (static_cast<double>(n) * static_cast<double>(m) > 1e9)
        throw CapExceededError("interleave_and_induce: n*m exceeds sample cap");

    const std::size_t cells = x1S * x2S * wS * wS;
    std::vector<double> pooled(cells, 0.0);
    std::vector<std::vector<double>> perRow(static_cast<std::size_t>(n),
                                            std::vector<double>(cells, 0.0));
    std::vector<int> row0Scores(static_cast<std::size_t>(m), 0);

    StreamRng srcRng(StreamRng::derive(seed, kSourceDraw));
    StreamRng permRng(StreamRng::derive(seed, kPermutation));
    StreamRng tRng(StreamRng::derive(seed, kTDraw));

    std::vector<int> x1(static_cast<std::size_t>(n)), x2(static_cast<std::size_t>(n));
    std::vector<int> s1(static_cast<std::size_t>(n)), s2(static_cast<std::size_t>(n));
    std::vector<int> w1p(static_cast<std::size_t>(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    long long agree = 0;

    for (long long blk = 0; blk < m; ++blk) {
        for (int i = 0; i < n; ++i) {
            const int cell = srcRng.sample(src.pmf.probs());
            x1[static_cast<std::size_t>(i)] = cell / static_cast<int>(x2S);
            x2[static_cast<std::size_t>(i)] = cell % static_cast<int>(x2S);
            s1[static_cast<std::size_t>(i)] =
                components.f1[static_cast<std::size_t>(x1[static_cast<std::size_t>(i)])];
            s2[static_cast<std::size_t>(i)] =
                components.f2[static_cast<std::size_t>(x2[static_cast<std::size_t>(i)])];
        }
        const auto& w1 = q.codeword(q.encode(s1));
        const auto& w2 = q.codeword(q.encode(s2));
        for (int i = 0; i < n; ++i) {
            const int t = tRng.sample(c.pTgivenS.row(static_cast<std::size_t>(s1[static_cast<std::size_t>(i)])));
            w1p[static_cast<std::size_t>(i)] = t == 0 ? w1[static_cast<std::size_t>(i)] : t - 1;
            if (w1p[static_cast<std::size_t>(i)] == w2[static_cast<std::size_t>(i)] &&
                s1[static_cast<std::size_t>(i)] == s2[static_cast<std::size_t>(i)])
                ++agree;
        }
        permRng.fill_permutation(perm);
        for (int i = 0; i < n; ++i) {
            const auto from = static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]);
            const std::size_t cell =
                ((static_cast<std::size_t>(x1[from]) * x2S + static_cast<std::size_t>(x2[from])) *
                     wS +
                 static_cast<std::size_t>(w1p[from])) *
                    wS +
                static_cast<std::size_t>(w2[from]);
            pooled[cell] += 1.0;
            perRow[static_cast<std::size_t>(i)][cell] += 1.0;
            if (i == 0) row0Scores[static_cast<std::size_t>(blk)] = static_cast<int>(cell);
        }
    }

    const double total = static_cast<double>(n) * static_cast<double>(m);
    InterleaveResult res{JointDist::uniform({src.x1, src.x2, q.w_alphabet(), q.w_alphabet()}),
                         0.0, 0, 0.0, 0.0, false, 0.0, false};
    {
        std::vector<double> probs(cells);
        for (std::size_t i = 0; i < cells; ++i) probs[i] = pooled[i] / total;
        res.empirical4 = JointDist({src.x1, src.x2, q.w_alphabet(), q.w_alphabet()}, std::move(probs));
    }
    res.probAgreeWS = static_cast<double>(agree) / total;
    res.cells = static_cast<long long>(n) * m;

    // Row-index invariance: per-row cell frequencies against the pooled ones,
    // Bonferroni-corrected normal test at level 0.01.
    const double md = static_cast<double>(m);
    res.rowZCritical =
        normal_upper_quantile(0.01 / (2.0 * static_cast<double>(n) * static_cast<double>(cells)));
    for (int i = 0; i < n; ++i)
        for (std::size_t cix = 0; cix < cells; ++cix) {
            const double pHat = pooled[cix] / total;
            const double se = std::sqrt(std::max(pHat * (1.0 - pHat), 1e-12) / md);
            const double z =
                std::abs(perRow[static_cast<std::size_t>(i)][cix] / md - pHat) / se;
            res.maxRowZ = std::max(res.maxRowZ, z);
        }
    res.rowInvariancePass = res.maxRowZ <= res.rowZCritical;

    // Exchangeability of row 0 across blocks: half-mean difference statistic
    // against its permutation distribution.
    {
        StreamRng shufRng(StreamRng::derive(seed, kShuffleTest));
        const auto half = static_cast<std::size_t>(m / 2);
        auto halfDiff = [&](const std::vector<int>& v) {
            double a = 0.0, b = 0.0;
            for (std::size_t k = 0; k < half; ++k) a += v[k];
            for (std::size_t k = half; k < static_cast<std::size_t>(m); ++k) b += v[k];
            return std::abs(a / static_cast<double>(half) -
                            b / static_cast<double>(m - static_cast<long long>(half)));
        };
        const double observed = halfDiff(row0Scores);
        const int reps = 200;
        int atLeast = 0;
        std::vector<int> idx(static_cast<std::size_t>(m));
        std::vector<int> permuted(static_cast<std::size_t>(m));
        for (int r = 0; r < reps; ++r) {
            shufRng.fill_permutation(idx);
            for (std::size_t k = 0; k < static_cast<std::size_t>(m); ++k)
                permuted[k] = row0Scores[static_cast<std::size_t>(idx[k])];
            if (halfDiff(permuted) >= observed) ++atLeast;
        }
        res.shuffleP = (1.0 + atLeast) / (1.0 + reps);
        res.shufflePass = res.shuffleP > 0.01;
    }
    return res;
}

JointDist exact_induced_joint4(const QuantizerCodebook& q, const CorrectionChannel& c,
                               const DistributedSource& src, const ComponentPair& components,
                               double* agreeOut, std::uint64_t cap) {
    const int n = q.n();
    const auto sS = static_cast<std::size_t>(components.s.size);
    const auto x1S = static_cast<std::size_t>(src.x1.size);
    const auto x2S = static_cast<std::size_t>(src.x2.size);
    const auto wS = static_cast<std::size_t>(q.w_alphabet().size);
    if (std::pow(static_cast<double>(sS * sS), n) > static_cast<double>(cap))
        throw CapExceededError("exact_induced_joint4: |S|^{2n} exceeds enumeration cap");

    // Per-position laws: P(S1,S2) and P(X1,X2 | S1,S2).
    std::vector<double> pss(sS * sS, 0.0);
    std::vector<double> pxGivenSS(sS * sS * x1S * x2S, 0.0);
    for (std::size_t a = 0; a < x1S; ++a)
        for (std::size_t b = 0; b < x2S; ++b) {
            const auto s1 = static_cast<std::size_t>(components.f1[a]);
            const auto s2 = static_cast<std::size_t>(components.f2[b]);
            pss[s1 * sS + s2] += src.pmf[a * x2S + b];
        }
    for (std::size_t a = 0; a < x1S; ++a)
        for (std::size_t b = 0; b < x2S; ++b) {
            const auto s1 = static_cast<std::size_t>(components.f1[a]);
            const auto s2 = static_cast<std::size_t>(components.f2[b]);
            if (pss[s1 * sS + s2] > 0.0)
                pxGivenSS[(s1 * sS + s2) * x1S * x2S + a * x2S + b] =
                    src.pmf[a * x2S + b] / pss[s1 * sS + s2];
        }

    // K(w' | w, s) = p0(s) 1(w'=w) + P_T(w'+1 | s).
    auto corrKernel = [&](std::size_t wp, std::size_t w, std::size_t s) {
        double v = c.pTgivenS.kernel(s, wp + 1);
        if (wp == w) v += c.pTgivenS.kernel(s, 0);
        return v;
    };

    std::vector<double> acc(x1S * x2S * wS * wS, 0.0);
    double agree = 0.0;
    std::vector<int> seq(static_cast<std::size_t>(n), 0);  // flat (s1, s2) per position
    const std::size_t pairCells = sS * sS;
    while (true) {
        double prob = 1.0;
        for (int j = 0; j < n; ++j) prob *= pss[static_cast<std::size_t>(seq[static_cast<std::size_t>(j)])];
        if (prob > 0.0) {
            std::vector<int> s1(static_cast<std::size_t>(n)), s2(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                s1[static_cast<std::size_t>(j)] = seq[static_cast<std::size_t>(j)] / static_cast<int>(sS);
                s2[static_cast<std::size_t>(j)] = seq[static_cast<std::size_t>(j)] % static_cast<int>(sS);
            }
            const auto& w1 = q.codeword(q.encode(s1));
            const auto& w2 = q.codeword(q.encode(s2));
            const double perPos = prob / static_cast<double>(n);
            for (int j = 0; j < n; ++j) {
                const auto js = static_cast<std::size_t>(j);
                const auto sj1 = static_cast<std::size_t>(s1[js]);
                const auto sj2 = static_cast<std::size_t>(s2[js]);
                const std::size_t fiber = (sj1 * sS + sj2) * x1S * x2S;
                for (std::size_t wp = 0; wp < wS; ++wp) {
                    const double kw = corrKernel(wp, static_cast<std::size_t>(w1[js]), sj1);
                    if (kw == 0.0) continue;
                    for (std::size_t a = 0; a < x1S; ++a)
                        for (std::size_t b = 0; b < x2S; ++b) {
                            const double px = pxGivenSS[fiber + a * x2S + b];
                            if (px == 0.0) continue;
                            acc[((a * x2S + b) * wS + wp) * wS +
                                static_cast<std::size_t>(w2[js])] += perPos * kw * px;
                        }
                }
                if (sj1 == sj2)
                    agree += perPos * corrKernel(static_cast<std::size_t>(w2[js]),
                                                 static_cast<std::size_t>(w1[js]), sj1);
            }
        }
        int pos = n - 1;
        while (pos >= 0 && ++seq[static_cast<std::size_t>(pos)] == static_cast<int>(pairCells)) {
            seq[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (agreeOut) *agreeOut = agree;
    double total = 0.0;
    for (double v : acc) total += v;
    for (double& v : acc) v /= total;
    return JointDist({src.x1, src.x2, q.w_alphabet(), q.w_alphabet()}, std::move(acc));
}

JointDist extend_with_test_channels(const JointDist& p4, const CondDist& pU1,
                                    const CondDist& pU2) {
    if (p4.rank() != 4) throw ValidationError("extend_with_test_channels: joint must be 4-axis");
    const int x1S = p4.axis(0).size, x2S = p4.axis(1).size;
    const int wS = p4.axis(2).size;
    const int u1S = pU1.to_axes()[0].size, u2S = pU2.to_axes()[0].size;
    if (pU1.from_axes().size() != 2 || pU1.from_axes()[0].size != x1S ||
        pU1.from_axes()[1].size != wS)
        throw ValidationError("extend_with_test_channels: pU1 must map (X1, W)");
    if (pU2.from_axes().size() != 2 || pU2.from_axes()[0].size != x2S ||
        pU2.from_axes()[1].size != wS)
        throw ValidationError("extend_with_test_channels: pU2 must map (X2, W)");
    std::vector<Alphabet> axes = {p4.axis(0), p4.axis(1), p4.axis(2), p4.axis(3), Alphabet(u1S),
                                  Alphabet(u2S)};
    return JointDist::from_function(std::move(axes), [&](std::span<const int> i) {
        const int idx4[] = {i[0], i[1], i[2], i[3]};
        const double base = p4.at(idx4);
        if (base == 0.0) return 0.0;
        const double k1 = pU1.kernel(static_cast<std::size_t>(i[0]) * static_cast<std::size_t>(wS) +
                                         static_cast<std::size_t>(i[2]),
                                     static_cast<std::size_t>(i[4]));
        const double k2 = pU2.kernel(static_cast<std::size_t>(i[1]) * static_cast<std::size_t>(wS) +
                                         static_cast<std::size_t>(i[3]),
                                     static_cast<std::size_t>(i[5]));
        return base * k1 * k2;
    });
}

VariationalBoundResult check_variational_bound(const JointDist& pPrime6, const DistributedSource& src,
                          const ComponentPair& components, const CondDist& pW,
                          const CondDist& pU1, const CondDist& pU2, double epsilon, double pTau,
                          double deltaN) {
    const int x1S = src.x1.size, x2S = src.x2.size;
    const int wS = pW.to_axes()[0].size;
    const int u1S = pU1.to_axes()[0].size, u2S = pU2.to_axes()[0].size;
    if (pPrime6.rank() != 6 || pPrime6.axis(0).size != x1S || pPrime6.axis(1).size != x2S ||
        pPrime6.axis(2).size != wS || pPrime6.axis(3).size != wS ||
        pPrime6.axis(4).size != u1S || pPrime6.axis(5).size != u2S)
        throw ValidationError("check_variational_bound: axis mismatch");

    std::vector<Alphabet> axes;
    for (int i = 0; i < 6; ++i) axes.push_back(pPrime6.axis(i));
    const JointDist qDist = JointDist::from_function(std::move(axes), [&](std::span<const int> i) {
        if (i[2] != i[3]) return 0.0;
        const int idx2[] = {i[0], i[1]};
        const double base = src.pmf.at(idx2);
        if (base == 0.0) return 0.0;
        const auto s1 = static_cast<std::size_t>(components.f1[static_cast<std::size_t>(i[0])]);
        const double kw = pW.kernel(s1, static_cast<std::size_t>(i[2]));
        const double k1 = pU1.kernel(static_cast<std::size_t>(i[0]) * static_cast<std::size_t>(wS) +
                                         static_cast<std::size_t>(i[2]),
                                     static_cast<std::size_t>(i[4]));
        const double k2 = pU2.kernel(static_cast<std::size_t>(i[1]) * static_cast<std::size_t>(wS) +
                                         static_cast<std::size_t>(i[3]),
                                     static_cast<std::size_t>(i[5]));
        return base * kw * k1 * k2;
    });

    VariationalBoundResult r;
    r.measuredV = variational_distance(pPrime6, qDist);
    r.bound = 1.0 - pTau + pTau * deltaN + epsilon;
    r.margin = r.bound - r.measuredV;
    r.pass = r.margin >= 0.0;
    return r;
}

namespace {

struct BohoTrialAccum {
    double d2Sum = 0.0;
    double dp1Sum = 0.0;
    double dp2Sum = 0.0;
    double stildeSum = 0.0;
    double coverFails = 0.0;
    double vDisagreeSum = 0.0;
};

BohoTrialStats run_boho_trial(const BohoSimConfig& cfg, int trial) {
    const int n = cfg.n;
    const auto nm = static_cast<double>(n) * static_cast<double>(cfg.m);

    // First-layer codebook targeting the BSC(delta) joint with uniform input.
    const JointDist pS = JointDist::uniform({Alphabet(2)});
    const CondDist chan = CondDist::bsc(cfg.delta);
    const QuantizerCodebook cb = build_quantizer_fixed(
        pS, chan, n, cfg.tau, cfg.theta, EncoderRule::MinHamming,
        StreamRng::derive(cfg.masterSeed, static_cast<std::uint64_t>(trial), kCodebook));

    StreamRng srcRng(StreamRng::derive(cfg.masterSeed, static_cast<std::uint64_t>(trial), kSourceDraw));
    StreamRng permRng(
        StreamRng::derive(cfg.masterSeed, static_cast<std::uint64_t>(trial), kPermutation));
    StreamRng noiseRng(
        StreamRng::derive(cfg.masterSeed, static_cast<std::uint64_t>(trial), kSecondLayer));

    BohoTrialAccum acc;
    std::vector<int> xBits(static_cast<std::size_t>(n)), zBits(static_cast<std::size_t>(n)),
        eBits(static_cast<std::size_t>(n)), x1Bits(static_cast<std::size_t>(n));
    std::vector<int> perm(static_cast<std::size_t>(n));

    // The second layer is memoryless across cells, so the permutation and its
    // inverse cancel in the reconstruction; the permuted mean is tracked for
    // the interleaved-chain statistic.
    for (long long blk = 0; blk < cfg.m; ++blk) {
        for (int i = 0; i < n; ++i) {
            const auto is = static_cast<std::size_t>(i);
            xBits[is] = srcRng.next_unit() < 0.5 ? 1 : 0;
            zBits[is] = srcRng.next_unit() < cfg.p ? 1 : 0;
            eBits[is] = srcRng.next_unit() < cfg.epsilon ? 1 : 0;
            x1Bits[is] = xBits[is] ^ eBits[is];
        }
        const auto& v = cb.codeword(cb.encode(x1Bits));
        const auto& vhat = cb.codeword(cb.encode(xBits));
        permRng.fill_permutation(perm);

        double typeDev = 0.0;
        {
            int n00 = 0, n01 = 0, n10 = 0, n11 = 0;
            for (int i = 0; i < n; ++i) {
                const auto is = static_cast<std::size_t>(i);
                if (x1Bits[is] == 0)
                    (v[is] == 0 ? n00 : n01)++;
                else
                    (v[is] == 0 ? n10 : n11)++;
            }
            const double half = 0.5;
            const double d = cfg.delta;
            typeDev = std::max(
                {std::abs(n00 / static_cast<double>(n) - half * (1 - d)),
                 std::abs(n01 / static_cast<double>(n) - half * d),
                 std::abs(n10 / static_cast<double>(n) - half * d),
                 std::abs(n11 / static_cast<double>(n) - half * (1 - d))});
        }
        if (typeDev > cfg.tau) acc.coverFails += 1.0;

        for (int i = 0; i < n; ++i) {
            const auto is = static_cast<std::size_t>(i);
            const int sCell = xBits[is] ^ vhat[is] ^ zBits[is];
            const int noise = noiseRng.next_unit() < cfg.delta1 ? 1 : 0;
            const int uCell = sCell ^ noise;  // idealized C_r output, cellwise
            const int recon = uCell ^ v[is];
            acc.d2Sum += (xBits[is] ^ zBits[is]) != recon ? 1.0 : 0.0;
            acc.dp1Sum += x1Bits[is] ^ v[is];
            acc.dp2Sum += xBits[is] ^ vhat[is];
            acc.stildeSum += sCell;
            acc.vDisagreeSum += v[is] != vhat[is] ? 1.0 : 0.0;
        }
    }

    BohoTrialStats st;
    st.d2 = acc.d2Sum / nm;
    st.deltaPrime1 = acc.dp1Sum / nm;
    st.deltaPrime2 = acc.dp2Sum / nm;
    st.stildeMean = acc.stildeSum / nm;
    st.coverFailFreq = acc.coverFails / static_cast<double>(cfg.m);
    st.vDisagree = acc.vDisagreeSum / nm;
    return st;
}

}  // namespace

std::string BohoSimReport::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "report boho_end_to_end\n";
    os << "p " << config.p << "\n";
    os << "epsilon " << config.epsilon << "\n";
    os << "n " << config.n << "\n";
    os << "theta " << config.theta << "\n";
    os << "delta " << config.delta << "\n";
    os << "delta1 " << config.delta1 << "\n";
    os << "tau " << config.tau << "\n";
    os << "m " << config.m << "\n";
    os << "trials " << config.trials << "\n";
    os << "seed " << config.masterSeed << "\n";
    os << "rate_r1 " << rateR1 << "\n";
    os << "rate_r2 " << rateR2 << "\n";
    os << "delta_n " << deltaN << "\n";
    os << "d2_measured " << pooled.d2 << "\n";
    os << "d2_bound " << d2Bound << "\n";
    os << "d2_radius " << d2Radius << "\n";
    os << "d2_gate " << (d2GatePass ? "pass" : "fail") << "\n";
    os << "delta_prime_enc1 " << pooled.deltaPrime1 << "\n";
    os << "delta_prime_enc2 " << pooled.deltaPrime2 << "\n";
    os << "stilde_mean " << pooled.stildeMean << "\n";
    os << "fin1_deviation " << fin1Deviation << "\n";
    os << "fin1_radius " << fin1Radius << "\n";
    os << "fin1_gate " << (fin1GatePass ? "pass" : "fail") << "\n";
    os << "cover_fail_freq " << pooled.coverFailFreq << "\n";
    os << "v_disagree " << pooled.vDisagree << "\n";
    os << "hard_gate " << (hardGatePass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string BohoSimReport::per_trial_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "trial,d2,delta_prime_enc1,delta_prime_enc2,stilde_mean,cover_fail_freq,v_disagree\n";
    for (std::size_t t = 0; t < perTrial.size(); ++t) {
        const auto& s = perTrial[t];
        os << t << ',' << s.d2 << ',' << s.deltaPrime1 << ',' << s.deltaPrime2 << ','
           << s.stildeMean << ',' << s.coverFailFreq << ',' << s.vDisagree << "\n";
    }
    return os.str();
}

BohoSimReport boho_end_to_end(const BohoSimConfig& cfg) {
    if (cfg.trials < 1) throw ValidationError("boho_end_to_end: trials must be >= 1");
    if (cfg.n < 1 || cfg.n > 20)
        throw InfeasibleError("boho_end_to_end: first-layer codebook feasible only for n <= 20");
    if (cfg.m < 1) throw ValidationError("boho_end_to_end: m must be >= 1");
    if (cfg.delta1 < 0.0 || cfg.delta1 > 1.0)
        throw ValidationError("boho_end_to_end: delta1 must be in [0,1]");

    BohoSimReport rep;
    rep.config = cfg;
    rep.perTrial.resize(static_cast<std::size_t>(cfg.trials));
    run_trials(cfg.trials, cfg.threads,
               [&](int t) { rep.perTrial[static_cast<std::size_t>(t)] = run_boho_trial(cfg, t); });

    BohoTrialStats pooled;
    for (const auto& s : rep.perTrial) {
        pooled.d2 += s.d2;
        pooled.deltaPrime1 += s.deltaPrime1;
        pooled.deltaPrime2 += s.deltaPrime2;
        pooled.stildeMean += s.stildeMean;
        pooled.coverFailFreq += s.coverFailFreq;
        pooled.vDisagree += s.vDisagree;
    }
    const double tn = cfg.trials;
    pooled.d2 /= tn;
    pooled.deltaPrime1 /= tn;
    pooled.deltaPrime2 /= tn;
    pooled.stildeMean /= tn;
    pooled.coverFailFreq /= tn;
    pooled.vDisagree /= tn;
    rep.pooled = pooled;

    const double cellsTotal =
        static_cast<double>(cfg.n) * static_cast<double>(cfg.m) * static_cast<double>(cfg.trials);
    rep.rateR1 = std::log2(static_cast<double>(cfg.theta)) / cfg.n;
    rep.deltaN = delta_n(cfg.epsilon, cfg.n);
    rep.rateR2 = std::max(
        0.0, binary_entropy(binary_convolve(cfg.p, pooled.deltaPrime2)) - binary_entropy(cfg.delta1));

    double penalty = 0.0;
    if (cfg.epsilon > 0.0)
        penalty = rep.deltaN * (pooled.deltaPrime2 +
                                binary_convolve(cfg.epsilon / rep.deltaN, pooled.deltaPrime1));
    rep.d2Bound = cfg.delta1 + penalty;
    rep.d2Radius = std::sqrt(std::log(2.0 / 0.01) / (2.0 * cellsTotal));
    rep.d2GatePass = pooled.d2 <= rep.d2Bound + 3.0 * rep.d2Radius;

    rep.fin1Deviation =
        std::abs(pooled.stildeMean - binary_convolve(cfg.p, pooled.deltaPrime2));
    rep.fin1Radius = normal_upper_quantile(0.005) *
                     std::sqrt(cfg.p * (1.0 - cfg.p) / cellsTotal);
    rep.fin1GatePass = rep.fin1Deviation <= rep.fin1Radius;

    rep.hardGatePass = rep.d2GatePass && rep.fin1GatePass;
    return rep;
}

}  // namespace rdlab
