#include "rdlab/checks.hpp"

#include "rdlab/components.hpp"
#include "rdlab/info.hpp"
#include "rdlab/sweep.hpp"
#include "rdlab/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rdlab {

bool CheckSuiteResult::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

std::string CheckSuiteResult::to_table() const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& r : rows) {
        os << (r.pass ? "  pass  " : "  FAIL  ") << r.name << "  margin=" << r.margin;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

JointDist random_dist(std::vector<Alphabet> axes, StreamRng& rng) {
    std::size_t cells = 1;
    for (const auto& a : axes) cells *= static_cast<std::size_t>(a.size);
    std::vector<double> p(cells);
    double sum = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.next_unit());
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return JointDist(std::move(axes), std::move(p));
}

}  // namespace

CheckSuiteResult run_continuity_suite(int pairsPerSize, std::uint64_t seed) {
    CheckSuiteResult res;
    res.suite = "continuity";
    for (int size : {2, 4, 8}) {
        StreamRng rng(StreamRng::derive(seed, static_cast<std::uint64_t>(size)));
        double minEnt = std::numeric_limits<double>::infinity();
        double minPair = minEnt, minCond = minEnt, minMono = minEnt;
        long long violations = 0;
        for (int k = 0; k < pairsPerSize; ++k) {
            // Entropy bound on a single axis.
            {
                const JointDist p = random_dist({Alphabet(size)}, rng);
                const JointDist q = random_dist({Alphabet(size)}, rng);
                const double v = variational_distance(p, q);
                const int ax[] = {0};
                const double gap = std::abs(entropy(p, ax) - entropy(q, ax));
                const double margin = entropy_continuity_bound(v, size) - gap;
                minEnt = std::min(minEnt, margin);
                if (margin < 0.0) ++violations;
            }
            // Mutual-information bounds on triple axes.
            {
                const std::vector<Alphabet> axes3(3, Alphabet(size));
                const JointDist p = random_dist(axes3, rng);
                const JointDist q = random_dist(axes3, rng);
                const double v = variational_distance(p, q);
                const auto bounds = mi_continuity_bounds(v, size);
                const int aX[] = {0}, aY[] = {1}, aZ[] = {2};
                const double pairGap =
                    std::abs(mutual_info(p, aX, aY) - mutual_info(q, aX, aY));
                const double condGap = std::abs(cond_mutual_info(p, aX, aY, aZ) -
                                                cond_mutual_info(q, aX, aY, aZ));
                const double mPair = bounds.pairBound - pairGap;
                const double mCond = bounds.condBound - condGap;
                minPair = std::min(minPair, mPair);
                minCond = std::min(minCond, mCond);
                if (mPair < 0.0 || mCond < 0.0) ++violations;
                // Marginalization monotonicity of the variational distance.
                const int keepXY[] = {0, 1};
                const double vm =
                    variational_distance(p.marginal(keepXY), q.marginal(keepXY));
                minMono = std::min(minMono, v - vm);
                if (v - vm < -1e-15) ++violations;
            }
        }
        const std::string sz = std::to_string(size);
        res.rows.push_back({"entropy_bound_size_" + sz, minEnt >= 0.0, minEnt, ""});
        res.rows.push_back({"mi_pair_bound_size_" + sz, minPair >= 0.0, minPair, ""});
        res.rows.push_back({"mi_cond_bound_size_" + sz, minCond >= 0.0, minCond, ""});
        res.rows.push_back({"marginal_monotone_size_" + sz, minMono >= -1e-15, minMono,
                            violations == 0 ? "" : std::to_string(violations) + " violations"});
    }
    return res;
}

CheckSuiteResult run_typicality_suite() {
    CheckSuiteResult res;
    res.suite = "typicality";

    // The zeta grid avoids knife-edge settings where some |k/n - p| equals
    // zeta/2 exactly and the verdict would hinge on rounding.
    const double probGrid[] = {0.5, 0.3, 0.15};
    const double zetaGrid[] = {0.09, 0.11, 0.16, 0.21, 0.29, 0.37, 0.61};

    // Cardinality and complement-probability bounds at n = 12, binary.
    {
        double minCard = std::numeric_limits<double>::infinity();
        double minProb = minCard;
        int settings = 0;
        const int n = 12;
        for (double pv : probGrid)
            for (double zeta : zetaGrid) {
                ++settings;
                const JointDist p({Alphabet(2)}, {1.0 - pv, pv});
                const auto bounds = typicality_bounds(p, n, zeta);
                double card = 0.0, mass = 0.0;
                for (int k = 0; k <= n; ++k) {
                    const double f1 = static_cast<double>(k) / n;
                    const double f0 = static_cast<double>(n - k) / n;
                    const bool typical =
                        std::abs(f0 - (1.0 - pv)) <= zeta / 2.0 && std::abs(f1 - pv) <= zeta / 2.0;
                    if (typical) {
                        double c = 1.0;  // C(n, k)
                        for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
                        card += c;
                        mass += c * std::pow(pv, k) * std::pow(1.0 - pv, n - k);
                    }
                }
                const double enumCard = static_cast<double>(typical_count(p, n, zeta));
                if (std::abs(enumCard - card) > 0.5)
                    throw GateError("typicality suite: enumerator disagrees with binomial oracle");
                minCard = std::min(minCard, bounds.cardBound - card);
                minProb = std::min(minProb, bounds.probComplementBound - (1.0 - mass));
            }
        res.rows.push_back({"typical_cardinality_bound_n12", minCard >= 0.0, minCard,
                            std::to_string(settings) + " settings"});
        res.rows.push_back({"typical_complement_bound_n12", minProb >= 0.0, minProb, ""});
    }

    // Composition (typical x, conditionally typical y => jointly typical) and
    // the conditional-count lower bound, exhaustively at n = 10 binary.
    {
        const int n = 10;
        double minCount = std::numeric_limits<double>::infinity();
        long long compositionViolations = 0;
        int settings = 0;
        for (double pv : probGrid)
            for (double zeta : {0.15, 0.3, 0.45})
                for (double delta : {0.2, 0.35, 0.5}) {
                    ++settings;
                    // Joint (X, Y): X ~ Bern(pv), Y = X through a BSC(0.25).
                    std::vector<double> joint = {(1.0 - pv) * 0.75, (1.0 - pv) * 0.25, pv * 0.25,
                                                 pv * 0.75};
                    const JointDist pXY({Alphabet(2), Alphabet(2)}, std::move(joint));
                    const int keepX[] = {0};
                    const JointDist pX = pXY.marginal(keepX);
                    const CondDist pYgX({Alphabet(2)}, {Alphabet(2)}, {0.75, 0.25, 0.25, 0.75});

                    for (int codeX = 0; codeX < (1 << n); ++codeX) {
                        std::vector<int> xv(n);
                        for (int i = 0; i < n; ++i) xv[static_cast<std::size_t>(i)] = (codeX >> i) & 1;
                        const SymbolSeq xs(Alphabet(2), xv);
                        if (!is_typical(xs, pX, zeta)) continue;
                        long long condCount = 0;
                        for (int codeY = 0; codeY < (1 << n); ++codeY) {
                            std::vector<int> yv(n);
                            for (int i = 0; i < n; ++i)
                                yv[static_cast<std::size_t>(i)] = (codeY >> i) & 1;
                            const SymbolSeq ys(Alphabet(2), yv);
                            const bool condTypical = is_cond_typical(ys, xs, pYgX, zeta);
                            if (condTypical) {
                                const SymbolSeq both[] = {xs, ys};
                                if (!is_typical(both, pXY, zeta * (2 + 2)))
                                    ++compositionViolations;
                            }
                            if (is_cond_typical(ys, xs, pYgX, delta)) ++condCount;
                        }
                        const double lb =
                            conditional_typical_count_lower_bound(pXY, xs, n, zeta, delta);
                        minCount = std::min(minCount, static_cast<double>(condCount) - lb);
                    }
                }
        res.rows.push_back({"typicality_composition_n10", compositionViolations == 0,
                            static_cast<double>(-compositionViolations),
                            std::to_string(settings) + " settings"});
        res.rows.push_back({"conditional_count_lower_bound_n10", minCount >= 0.0, minCount, ""});
    }
    return res;
}

DistributedSource block_diag_source_3x3() {
    // Two support blocks {0,1}x{0,1} and {2}x{2}; the common part indexes the block.
    std::vector<double> pmf = {0.22, 0.13, 0.0,   //
                               0.08, 0.27, 0.0,   //
                               0.0, 0.0, 0.30};
    std::vector<double> d(9, 1.0);
    for (int i = 0; i < 3; ++i) d[static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(i)] = 0.0;
    return DistributedSource(Alphabet(3), Alphabet(3),
                             JointDist({Alphabet(3), Alphabet(3)}, std::move(pmf)), d, d);
}

CheckSuiteResult run_containment_suite(int specs, std::uint64_t seed, long long n, double tau,
                                       double slack) {
    CheckSuiteResult res;
    res.suite = "containment";
    const DistributedSource src = block_diag_source_3x3();
    const GkResult gk = gk_common_part(src);
    if (tau <= 0.0) tau = std::pow(static_cast<double>(n), -0.4);

    StreamRng rng(StreamRng::derive(seed, 0x636f6e74));
    SpecSampleOptions sopts;
    sopts.wSize = std::min(3, gk.pair.s.size + 1);
    sopts.u1Size = 3;
    sopts.u2Size = 3;
    sopts.kernelFloor = 0.3;

    std::vector<TaggedCorner> ccCloud, flmcCloud;
    double maxCornerGap = 0.0;
    for (int k = 0; k < specs; ++k) {
        const FlmcCodingSpec spec = sample_coding_spec(src, gk.pair, sopts, rng);
        const CornerPair cc = cc_alpha(src, spec);
        const CornerPair fl = flmc_alpha(src, spec, n, tau, true);
        ccCloud.push_back({cc.lowR1, k});
        ccCloud.push_back({cc.lowR2, k});
        flmcCloud.push_back({fl.lowR1, k});
        flmcCloud.push_back({fl.lowR2, k});
        maxCornerGap = std::max({maxCornerGap, fl.lowR1.r1 - cc.lowR1.r1,
                                 fl.lowR1.r2 - cc.lowR1.r2, fl.lowR2.r1 - cc.lowR2.r1,
                                 fl.lowR2.r2 - cc.lowR2.r2, fl.lowR1.d1 - cc.lowR1.d1,
                                 fl.lowR1.d2 - cc.lowR1.d2});
    }
    const RegionBoundary ccB = assemble_region(ccCloud, 1.0, 1.0, true);
    const RegionBoundary flB = assemble_region(flmcCloud, 1.0, 1.0, true);
    const ContainmentResult contained = region_contains(flB, ccB, slack);

    res.rows.push_back({"flmc_corner_gap_below_slack", maxCornerGap <= slack,
                        slack - maxCornerGap, "n=" + std::to_string(n)});
    res.rows.push_back({"cc_subset_flmc", contained.contains, -contained.maxViolation,
                        std::to_string(specs) + " specs"});
    return res;
}

}  // namespace rdlab
