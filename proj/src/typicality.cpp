#include "rdlab/typicality.hpp"

#include "rdlab/info.hpp"

#include <cmath>

namespace rdlab {

SymbolSeq::SymbolSeq(Alphabet a, std::vector<int> v) : alphabet(std::move(a)), values(std::move(v)) {
    if (values.empty()) throw ValidationError("SymbolSeq: length must be >= 1");
    for (int x : values)
        if (x < 0 || x >= alphabet.size) throw ValidationError("SymbolSeq: symbol out of range");
}

JointDist EmpiricalType::to_joint() const {
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    return JointDist(axes, std::move(p));
}

EmpiricalType joint_type(std::span<const SymbolSeq> seqs) {
    if (seqs.empty()) throw ValidationError("joint_type: no sequences");
    const int n = seqs[0].n();
    std::size_t cells = 1;
    std::vector<Alphabet> axes;
    for (const auto& s : seqs) {
        if (s.n() != n) throw ValidationError("joint_type: length mismatch");
        axes.push_back(s.alphabet);
        cells *= static_cast<std::size_t>(s.alphabet.size);
    }
    EmpiricalType t{std::move(axes), std::vector<std::int64_t>(cells, 0), n};
    for (int j = 0; j < n; ++j) {
        std::size_t flat = 0;
        for (const auto& s : seqs)
            flat = flat * static_cast<std::size_t>(s.alphabet.size) +
                   static_cast<std::size_t>(s.values[static_cast<std::size_t>(j)]);
        ++t.counts[flat];
    }
    return t;
}

double dn_distortion(const SymbolSeq& s, const SymbolSeq& w, const JointDist& target) {
    if (target.rank() != 2 || target.axis(0).size != s.alphabet.size ||
        target.axis(1).size != w.alphabet.size)
        throw ValidationError("dn_distortion: target axes do not match sequences");
    const SymbolSeq pair[] = {s, w};
    const EmpiricalType t = joint_type(pair);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        const double dev = std::abs(static_cast<double>(t.counts[i]) / static_cast<double>(t.n) -
                                    target[i]);
        worst = std::max(worst, dev);
    }
    return worst;
}

bool is_typical(std::span<const SymbolSeq> seqs, const JointDist& p, double zeta) {
    if (zeta < 0.0) throw ValidationError("is_typical: zeta must be >= 0");
    if (static_cast<int>(seqs.size()) != p.rank())
        throw ValidationError("is_typical: sequence count must match pmf rank");
    const EmpiricalType t = joint_type(seqs);
    const double denom = static_cast<double>(p.cells());
    for (std::size_t i = 0; i < p.cells(); ++i) {
        const double freq = static_cast<double>(t.counts[i]) / static_cast<double>(t.n);
        if (p[i] == 0.0) {
            if (t.counts[i] != 0) return false;  // support indicator rule
        } else if (std::abs(freq - p[i]) > zeta / denom) {
            return false;
        }
    }
    return true;
}

bool is_typical(const SymbolSeq& x, const JointDist& p, double zeta) {
    const SymbolSeq one[] = {x};
    return is_typical(one, p, zeta);
}

bool is_cond_typical(const SymbolSeq& y, const SymbolSeq& x, const CondDist& pYgivenX,
                     double zeta) {
    if (zeta < 0.0) throw ValidationError("is_cond_typical: zeta must be >= 0");
    if (pYgivenX.from_axes().size() != 1 || pYgivenX.to_axes().size() != 1)
        throw ValidationError("is_cond_typical: kernel must be single-axis");
    if (x.alphabet.size != pYgivenX.from_axes()[0].size ||
        y.alphabet.size != pYgivenX.to_axes()[0].size || x.n() != y.n())
        throw ValidationError("is_cond_typical: shape mismatch");
    const int n = x.n();
    const auto xs = static_cast<std::size_t>(x.alphabet.size);
    const auto ys = static_cast<std::size_t>(y.alphabet.size);
    std::vector<int> nx(xs, 0), nxy(xs * ys, 0);
    for (int j = 0; j < n; ++j) {
        const auto a = static_cast<std::size_t>(x.values[static_cast<std::size_t>(j)]);
        const auto b = static_cast<std::size_t>(y.values[static_cast<std::size_t>(j)]);
        ++nx[a];
        ++nxy[a * ys + b];
    }
    for (std::size_t a = 0; a < xs; ++a) {
        for (std::size_t b = 0; b < ys; ++b) {
            const double k = pYgivenX.kernel(a, b);
            const double lhs = std::abs(static_cast<double>(nxy[a * ys + b]) / n -
                                        static_cast<double>(nx[a]) / n * k);
            if (k == 0.0) {
                if (nxy[a * ys + b] != 0) return false;
            } else if (lhs > zeta / static_cast<double>(ys)) {
                return false;
            }
        }
    }
    return true;
}

std::uint64_t for_each_typical(const JointDist& p, int n, double zeta,
                               const std::function<void(std::span<const std::vector<int>>)>& visit,
                               std::uint64_t cap) {
    if (n < 1) throw ValidationError("for_each_typical: n must be >= 1");
    const std::size_t cells = p.cells();
    if (std::pow(static_cast<double>(cells), static_cast<double>(n)) > static_cast<double>(cap))
        throw CapExceededError("for_each_typical: |X|^n exceeds enumeration cap");

    const int rank = p.rank();
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(rank),
                                       std::vector<int>(static_cast<std::size_t>(n), 0));
    std::vector<std::size_t> tupleAt(static_cast<std::size_t>(n), 0);  // flat tuple per position
    std::vector<std::int64_t> counts(cells, 0);
    counts[0] = n;

    // Sizes per axis for decoding a flat tuple into per-axis symbols.
    std::vector<int> sizes(static_cast<std::size_t>(rank));
    for (int a = 0; a < rank; ++a) sizes[static_cast<std::size_t>(a)] = p.axis(a).size;

    const double denom = static_cast<double>(cells);
    std::uint64_t found = 0;

    auto typicalNow = [&]() {
        for (std::size_t i = 0; i < cells; ++i) {
            const double freq = static_cast<double>(counts[i]) / static_cast<double>(n);
            if (p[i] == 0.0) {
                if (counts[i] != 0) return false;
            } else if (std::abs(freq - p[i]) > zeta / denom) {
                return false;
            }
        }
        return true;
    };

    auto decode = [&](std::size_t pos) {
        std::size_t rem = tupleAt[pos];
        for (int a = rank - 1; a >= 0; --a) {
            rows[static_cast<std::size_t>(a)][pos] =
                static_cast<int>(rem % static_cast<std::size_t>(sizes[static_cast<std::size_t>(a)]));
            rem /= static_cast<std::size_t>(sizes[static_cast<std::size_t>(a)]);
        }
    };
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) decode(j);

    // Odometer over tuple-sequences; the per-cell count vector is maintained
    // incrementally so the typicality test is O(cells) per sequence.
    while (true) {
        if (typicalNow()) {
            ++found;
            if (visit) visit(rows);
        }
        std::size_t pos = static_cast<std::size_t>(n);
        while (pos > 0) {
            --pos;
            --counts[tupleAt[pos]];
            if (++tupleAt[pos] < cells) {
                ++counts[tupleAt[pos]];
                decode(pos);
                break;
            }
            tupleAt[pos] = 0;
            ++counts[0];
            decode(pos);
            if (pos == 0) return found;  // full wrap
        }
    }
}

std::uint64_t typical_count(const JointDist& p, int n, double zeta, std::uint64_t cap) {
    return for_each_typical(p, n, zeta, nullptr, cap);
}

TypicalityBounds typicality_bounds(const JointDist& p, int n, double zeta) {
    if (zeta <= 0.0) throw ValidationError("typicality_bounds: zeta must be > 0");
    if (n < 1) throw ValidationError("typicality_bounds: n must be >= 1");
    const double sz = static_cast<double>(p.cells());
    double zetaPrime = 0.0;
    for (std::size_t i = 0; i < p.cells(); ++i)
        if (p[i] > 0.0) zetaPrime += -std::log2(p[i]);
    zetaPrime *= zeta / sz;
    std::vector<int> allAxes(static_cast<std::size_t>(p.rank()));
    for (int i = 0; i < p.rank(); ++i) allAxes[static_cast<std::size_t>(i)] = i;
    const double h = entropy(p, allAxes);
    const double card = std::exp2(static_cast<double>(n) * (h + zetaPrime));
    const double comp = 2.0 * sz * std::exp(-2.0 * n * (zeta / sz) * (zeta / sz));
    return {card, comp};
}

double conditional_typical_count_lower_bound(const JointDist& pXY, const SymbolSeq& xSeq, int n,
                                             double zeta, double delta) {
    if (pXY.rank() != 2) throw ValidationError("conditional_typical_count_lower_bound: pXY must be 2-axis");
    if (xSeq.n() != n) throw ValidationError("conditional_typical_count_lower_bound: length mismatch");
    const auto xs = static_cast<std::size_t>(pXY.axis(0).size);
    const auto ys = static_cast<std::size_t>(pXY.axis(1).size);

    const int keepX[] = {0};
    const JointDist pX = pXY.marginal(keepX);
    double pMax = 0.0;
    for (std::size_t a = 0; a < xs; ++a) pMax = std::max(pMax, pX[a]);
    if (zeta < 0.0 || zeta > static_cast<double>(xs) * pMax)
        throw ValidationError("conditional_typical_count_lower_bound: zeta outside [0, |X| P_max]");
    if (!is_typical(xSeq, pX, zeta))
        throw ValidationError("conditional_typical_count_lower_bound: xSeq not zeta-typical");

    // delta1 = -(delta/|Y|) sum_{a,b} log P(b|a), zeta2 = (zeta/|X|) sum_a H(Y|X=a),
    // restricted to supported cells as in the typicality indicator.
    double delta1 = 0.0, zeta2 = 0.0;
    for (std::size_t a = 0; a < xs; ++a) {
        if (pX[a] <= 0.0) continue;
        double hCond = 0.0;
        for (std::size_t b = 0; b < ys; ++b) {
            const double k = pXY[a * ys + b] / pX[a];
            if (k > 0.0) {
                delta1 += -std::log2(k);
                hCond += -k * std::log2(k);
            }
        }
        zeta2 += hCond;
    }
    delta1 *= delta / static_cast<double>(ys);
    zeta2 *= zeta / static_cast<double>(xs);

    const int both[] = {0, 1};
    const int justX[] = {0};
    const double hYgivenX = entropy(pXY, both) - entropy(pXY, justX);

    // alpha(delta): a probability product; a negative bracket makes the bound
    // vacuous, so it clamps at zero.
    const double bracket =
        1.0 - 2.0 * static_cast<double>(ys) *
                  std::exp(-(static_cast<double>(n) / pMax) *
                           (delta / static_cast<double>(ys)) * (delta / static_cast<double>(ys)));
    const double alpha = bracket > 0.0 ? std::pow(bracket, static_cast<double>(xs)) : 0.0;

    return std::exp2(static_cast<double>(n) * (hYgivenX - delta1 - zeta2)) * alpha;
}

}  // namespace rdlab
