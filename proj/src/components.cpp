#include "rdlab/components.hpp"

#include "rdlab/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace rdlab {

ComponentPair::ComponentPair(Alphabet sAlpha, std::vector<int> map1, std::vector<int> map2,
                             double eps)
    : s(std::move(sAlpha)), f1(std::move(map1)), f2(std::move(map2)), epsilon(eps) {
    if (epsilon < 0.0 || epsilon > 1.0) throw ValidationError("ComponentPair: epsilon must be in [0,1]");
    for (int v : f1)
        if (v < 0 || v >= s.size) throw ValidationError("ComponentPair: f1 not into S");
    for (int v : f2)
        if (v < 0 || v >= s.size) throw ValidationError("ComponentPair: f2 not into S");
}

double epsilon_of(const DistributedSource& src, const std::vector<int>& f1,
                  const std::vector<int>& f2, int sSize) {
    if (static_cast<int>(f1.size()) != src.x1.size || static_cast<int>(f2.size()) != src.x2.size)
        throw ValidationError("epsilon_of: maps must be total on the source alphabets");
    for (int v : f1)
        if (v < 0 || v >= sSize) throw ValidationError("epsilon_of: f1 range mismatch");
    for (int v : f2)
        if (v < 0 || v >= sSize) throw ValidationError("epsilon_of: f2 range mismatch");
    double eps = 0.0;
    const auto n2 = static_cast<std::size_t>(src.x2.size);
    for (std::size_t a = 0; a < static_cast<std::size_t>(src.x1.size); ++a)
        for (std::size_t b = 0; b < n2; ++b)
            if (f1[a] != f2[b]) eps += src.pmf[a * n2 + b];
    return eps;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Relabels (f1, f2) so S-labels appear in first-occurrence order along f1
// then f2; returns the number of labels in use.
int canonicalize(std::vector<int>& f1, std::vector<int>& f2, int sSize) {
    std::vector<int> remap(static_cast<std::size_t>(sSize), -1);
    int next = 0;
    for (int& v : f1) {
        if (remap[static_cast<std::size_t>(v)] < 0) remap[static_cast<std::size_t>(v)] = next++;
        v = remap[static_cast<std::size_t>(v)];
    }
    for (int& v : f2) {
        if (remap[static_cast<std::size_t>(v)] < 0) remap[static_cast<std::size_t>(v)] = next++;
        v = remap[static_cast<std::size_t>(v)];
    }
    return next;
}

}  // namespace

GkResult gk_common_part(const DistributedSource& src, double supportTol) {
    const int n1 = src.x1.size;
    const int n2 = src.x2.size;
    UnionFind uf(n1 + n2);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b)
            if (src.pmf[static_cast<std::size_t>(a) * static_cast<std::size_t>(n2) +
                        static_cast<std::size_t>(b)] > supportTol)
                uf.unite(a, n1 + b);

    std::vector<int> f1(static_cast<std::size_t>(n1)), f2(static_cast<std::size_t>(n2));
    for (int a = 0; a < n1; ++a) f1[static_cast<std::size_t>(a)] = uf.find(a);
    for (int b = 0; b < n2; ++b) f2[static_cast<std::size_t>(b)] = uf.find(n1 + b);
    const int used = canonicalize(f1, f2, n1 + n2);

    // K = H(V) with V the component of X1 under the source distribution.
    std::vector<double> pv(static_cast<std::size_t>(used), 0.0);
    for (int a = 0; a < n1; ++a)
        for (int b = 0; b < n2; ++b)
            pv[static_cast<std::size_t>(f1[static_cast<std::size_t>(a)])] +=
                src.pmf[static_cast<std::size_t>(a) * static_cast<std::size_t>(n2) +
                        static_cast<std::size_t>(b)];
    double k = 0.0;
    for (double p : pv)
        if (p > 0.0) k -= p * std::log2(p);

    ComponentPair pair(Alphabet(used), std::move(f1), std::move(f2),
                       0.0);  // common parts agree almost surely
    return {std::move(pair), k};
}

std::vector<ComponentPair> enumerate_component_pairs(const DistributedSource& src, int maxS,
                                                     double maxEps, std::uint64_t cap) {
    if (maxS < 1) throw ValidationError("enumerate_component_pairs: maxS must be >= 1");
    const int n1 = src.x1.size;
    const int n2 = src.x2.size;
    const double total = std::pow(static_cast<double>(maxS), static_cast<double>(n1 + n2));
    if (total > static_cast<double>(cap))
        throw CapExceededError("enumerate_component_pairs: combinatorial cap exceeded");

    std::vector<ComponentPair> out;
    std::set<std::vector<int>> seen;  // canonical (f1 ++ f2) keys

    std::vector<int> f1(static_cast<std::size_t>(n1), 0), f2(static_cast<std::size_t>(n2), 0);
    const auto count = static_cast<std::uint64_t>(total);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::uint64_t rem = code;
        for (int i = 0; i < n1; ++i) {
            f1[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::uint64_t>(maxS));
            rem /= static_cast<std::uint64_t>(maxS);
        }
        for (int i = 0; i < n2; ++i) {
            f2[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::uint64_t>(maxS));
            rem /= static_cast<std::uint64_t>(maxS);
        }
        std::vector<int> c1 = f1, c2 = f2;
        const int used = canonicalize(c1, c2, maxS);
        std::vector<int> key = c1;
        key.insert(key.end(), c2.begin(), c2.end());
        if (!seen.insert(std::move(key)).second) continue;

        const double eps = epsilon_of(src, c1, c2, used);
        if (eps <= maxEps) out.emplace_back(Alphabet(used), std::move(c1), std::move(c2), eps);
    }
    return out;
}

}  // namespace rdlab
