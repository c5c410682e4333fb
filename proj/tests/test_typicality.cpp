#include "doctest.h"

#include "rdlab/info.hpp"
#include "rdlab/typicality.hpp"

#include <cmath>
#include <vector>

using namespace rdlab;

namespace {

SymbolSeq bits(const std::string& s) {
    std::vector<int> v;
    for (char c : s) v.push_back(c - '0');
    return SymbolSeq(Alphabet(2), std::move(v));
}

JointDist bern(double p) { return JointDist({Alphabet(2)}, {1.0 - p, p}); }

double choose(int n, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

}  // namespace

TEST_CASE("joint type counts") {
    {
        const SymbolSeq pair[] = {bits("0101"), bits("0101")};
        const EmpiricalType t = joint_type(pair);
        CHECK(t.counts == std::vector<std::int64_t>{2, 0, 0, 2});
        CHECK(t.n == 4);
    }
    {
        const SymbolSeq pair[] = {bits("0011"), bits("0101")};
        const EmpiricalType t = joint_type(pair);
        CHECK(t.counts == std::vector<std::int64_t>{1, 1, 1, 1});
    }
    CHECK_THROWS_AS(SymbolSeq(Alphabet(2), {}), ValidationError);
    {
        const SymbolSeq pair[] = {bits("01"), bits("011")};
        CHECK_THROWS_AS(joint_type(pair), ValidationError);
    }
    // Exchangeability: permuting positions jointly leaves the type unchanged.
    {
        const SymbolSeq pair[] = {bits("00110101"), bits("01010011")};
        const SymbolSeq permuted[] = {bits("10100101"), bits("10010011")};
        // permuted is pair with positions 0..7 shuffled by the same map
        std::vector<int> perm = {3, 0, 6, 1, 7, 2, 4, 5};
        std::vector<int> a(8), b(8);
        for (int i = 0; i < 8; ++i) {
            a[static_cast<std::size_t>(i)] = pair[0].values[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
            b[static_cast<std::size_t>(i)] = pair[1].values[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        }
        const SymbolSeq shuffled[] = {SymbolSeq(Alphabet(2), a), SymbolSeq(Alphabet(2), b)};
        CHECK(joint_type(pair).counts == joint_type(shuffled).counts);
        (void)permuted;
    }
}

TEST_CASE("n-letter distortion") {
    const JointDist uniform22 = JointDist::uniform({Alphabet(2), Alphabet(2)});
    // Type matching the target exactly gives zero.
    const SymbolSeq s = bits("0011");
    const SymbolSeq w = bits("0101");
    CHECK(dn_distortion(s, w, uniform22) == doctest::Approx(0.0));
    // All-zeros pair vs the uniform-independent target.
    CHECK(dn_distortion(bits("0000"), bits("0000"), uniform22) == doctest::Approx(0.75));
    // Never exceeds 1, and zero iff exact match.
    StreamRng rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<int> a(6), b(6);
        for (int i = 0; i < 6; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
            b[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(2));
        }
        const SymbolSeq sa(Alphabet(2), a), sb(Alphabet(2), b);
        const double d = dn_distortion(sa, sb, uniform22);
        CHECK(d <= 1.0);
        const SymbolSeq pairAb[] = {sa, sb};
        const JointDist tt = joint_type(pairAb).to_joint();
        CHECK((d == 0.0) == (variational_distance(tt, uniform22) == 0.0));
    }
}

TEST_CASE("typicality membership") {
    // Maximal zeta accepts everything under full support.
    const JointDist p = bern(0.3);
    CHECK(is_typical(bits("1111111111"), p, 2.0));
    // A zero-probability symbol disqualifies for every zeta.
    const JointDist pointMass({Alphabet(2)}, {1.0, 0.0});
    CHECK_FALSE(is_typical(bits("0001"), pointMass, 100.0));
    CHECK(is_typical(bits("0000"), pointMass, 0.0));
    // Bern(0.5), n=10, seven ones: |0.7-0.5| = 0.2 > 0.3/2.
    CHECK_FALSE(is_typical(bits("1111111000"), bern(0.5), 0.3));
    CHECK(is_typical(bits("1111100000"), bern(0.5), 0.3));
}

TEST_CASE("typical set enumeration") {
    // Huge zeta counts the whole space.
    CHECK(typical_count(bern(0.3), 8, 10.0) == 256);
    // Point mass has exactly one member.
    const JointDist pointMass({Alphabet(2)}, {1.0, 0.0});
    CHECK(typical_count(pointMass, 12, 0.1) == 1);
    // Bern(0.5), n=12, zeta=0.2: binomial-sum oracle over k with |k/12-0.5| <= 0.1.
    double oracle = 0.0;
    for (int k = 0; k <= 12; ++k)
        if (std::abs(k / 12.0 - 0.5) <= 0.1) oracle += choose(12, k);
    CHECK(oracle == doctest::Approx(2508.0));  // k in {5, 6, 7}
    CHECK(typical_count(bern(0.5), 12, 0.2) == 2508);
    CHECK_THROWS_AS(typical_count(bern(0.5), 40, 0.2), CapExceededError);
}

TEST_CASE("typical set bounds") {
    // Exhaustive check of both typical-set bounds at small n, binary. The grid
    // avoids knife-edge (p, zeta, n) combinations where |k/n - p| equals
    // zeta/2 exactly; the oracle tests both cells, as the definition does.
    for (double pv : {0.5, 0.3, 0.2})
        for (double zeta : {0.11, 0.26, 0.52})
            for (int n : {8, 10, 12}) {
                const JointDist p = bern(pv);
                const auto bounds = typicality_bounds(p, n, zeta);
                double card = 0.0, mass = 0.0;
                for (int k = 0; k <= n; ++k) {
                    const double f1 = static_cast<double>(k) / n;
                    const double f0 = static_cast<double>(n - k) / n;
                    if (std::abs(f1 - pv) <= zeta / 2.0 &&
                        std::abs(f0 - (1.0 - pv)) <= zeta / 2.0) {
                        card += choose(n, k);
                        mass += choose(n, k) * std::pow(pv, k) * std::pow(1.0 - pv, n - k);
                    }
                }
                CHECK(typical_count(p, n, zeta) == doctest::Approx(card));
                CHECK(card <= bounds.cardBound * (1 + 1e-12));
                CHECK(1.0 - mass <= bounds.probComplementBound + 1e-12);
            }
    // The complement bound can exceed 1 at small n (vacuous, still returned).
    CHECK(typicality_bounds(bern(0.5), 4, 0.5).probComplementBound > 1.0);
    CHECK_THROWS_AS(typicality_bounds(bern(0.5), 4, 0.0), ValidationError);
}

TEST_CASE("composition of typical and conditionally typical") {
    // x typical, y conditionally typical => (x, y) jointly typical at
    // zeta(|X| + |Y|); exhaustive at n = 8 binary.
    const int n = 8;
    const double pv = 0.4;
    const JointDist pXY({Alphabet(2), Alphabet(2)},
                        {(1 - pv) * 0.8, (1 - pv) * 0.2, pv * 0.3, pv * 0.7});
    const int keepX[] = {0};
    const JointDist pX = pXY.marginal(keepX);
    const CondDist pYgX({Alphabet(2)}, {Alphabet(2)}, {0.8, 0.2, 0.3, 0.7});
    for (double zeta : {0.2, 0.4}) {
        for (int cx = 0; cx < (1 << n); ++cx) {
            std::vector<int> xv(n);
            for (int i = 0; i < n; ++i) xv[static_cast<std::size_t>(i)] = (cx >> i) & 1;
            const SymbolSeq xs(Alphabet(2), xv);
            if (!is_typical(xs, pX, zeta)) continue;
            for (int cy = 0; cy < (1 << n); ++cy) {
                std::vector<int> yv(n);
                for (int i = 0; i < n; ++i) yv[static_cast<std::size_t>(i)] = (cy >> i) & 1;
                const SymbolSeq ys(Alphabet(2), yv);
                if (!is_cond_typical(ys, xs, pYgX, zeta)) continue;
                const SymbolSeq both[] = {xs, ys};
                CHECK(is_typical(both, pXY, zeta * 4.0));
            }
        }
    }
}

TEST_CASE("conditional typical count lower bound") {
    const int n = 8;
    const double pv = 0.5;
    const JointDist pXY({Alphabet(2), Alphabet(2)},
                        {(1 - pv) * 0.75, (1 - pv) * 0.25, pv * 0.25, pv * 0.75});
    const int keepX[] = {0};
    const JointDist pX = pXY.marginal(keepX);
    const CondDist pYgX({Alphabet(2)}, {Alphabet(2)}, {0.75, 0.25, 0.25, 0.75});
    const double zeta = 0.3;
    const int axBoth[] = {0, 1};
    const int axX[] = {0};
    const double hYgX = entropy(pXY, axBoth) - entropy(pXY, axX);
    for (double delta : {0.3, 0.6, 1.2}) {
        double minSlack = 1e300;
        for (int cx = 0; cx < (1 << n); ++cx) {
            std::vector<int> xv(n);
            for (int i = 0; i < n; ++i) xv[static_cast<std::size_t>(i)] = (cx >> i) & 1;
            const SymbolSeq xs(Alphabet(2), xv);
            if (!is_typical(xs, pX, zeta)) continue;
            long long count = 0;
            for (int cy = 0; cy < (1 << n); ++cy) {
                std::vector<int> yv(n);
                for (int i = 0; i < n; ++i) yv[static_cast<std::size_t>(i)] = (cy >> i) & 1;
                if (is_cond_typical(SymbolSeq(Alphabet(2), yv), xs, pYgX, delta)) ++count;
            }
            const double lb = conditional_typical_count_lower_bound(pXY, xs, n, zeta, delta);
            minSlack = std::min(minSlack, static_cast<double>(count) - lb);
        }
        CHECK(minSlack >= 0.0);
        // alpha(delta) <= 1 and the exponent corrections are nonnegative, so
        // the bound never exceeds 2^{n H(Y|X)}.
        const SymbolSeq balanced = bits("01010101");
        const double lb = conditional_typical_count_lower_bound(pXY, balanced, n, zeta, delta);
        CHECK(lb <= std::pow(2.0, n * hYgX) + 1e-9);
    }
    // Precondition violation: a sequence outside the zeta-typical set.
    CHECK_THROWS_AS(
        conditional_typical_count_lower_bound(pXY, bits("11111111"), n, 0.0, 0.3),
        ValidationError);
}
