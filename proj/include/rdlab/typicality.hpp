#pragma once

#include "rdlab/dist.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rdlab {

// A length-n sequence of symbol indices over one alphabet.
struct SymbolSeq {
    Alphabet alphabet;
    std::vector<int> values;

    SymbolSeq(Alphabet a, std::vector<int> v);
    int n() const { return static_cast<int>(values.size()); }
};

// Joint symbol-tuple counts of a list of aligned sequences.
struct EmpiricalType {
    std::vector<Alphabet> axes;
    std::vector<std::int64_t> counts;  // row-major over axes
    int n = 0;

    JointDist to_joint() const;  // counts / n
};

EmpiricalType joint_type(std::span<const SymbolSeq> seqs);

// Max-cell deviation of the joint type of (s,w) from a target joint pmf.
double dn_distortion(const SymbolSeq& s, const SymbolSeq& w, const JointDist& target);

// Typical-set membership per the per-cell deviation rule: each supported cell
// deviates by at most zeta / (number of cells); zero-probability cells must be
// unvisited. For one sequence this is the A^n_zeta(X) rule; for several aligned
// sequences it is the joint rule with denominator |X||Y|...
bool is_typical(std::span<const SymbolSeq> seqs, const JointDist& p, double zeta);
bool is_typical(const SymbolSeq& x, const JointDist& p, double zeta);

// Conditional rule: |N(a,b)/n - (N(a|x)/n) P(b|a)| <= zeta/|Y| on supported
// kernel cells, unsupported cells unvisited.
bool is_cond_typical(const SymbolSeq& y, const SymbolSeq& x, const CondDist& pYgivenX,
                     double zeta);

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

// Visits every tuple-sequence over the product alphabet of p's axes (rank 1
// gives plain sequences), calling visit with one row per axis. Returns the
// number of typical members. visit may be empty when only the count matters.
std::uint64_t for_each_typical(
    const JointDist& p, int n, double zeta,
    const std::function<void(std::span<const std::vector<int>>)>& visit = nullptr,
    std::uint64_t cap = kEnumerationCap);

std::uint64_t typical_count(const JointDist& p, int n, double zeta,
                            std::uint64_t cap = kEnumerationCap);

struct TypicalityBounds {
    double cardBound;            // 2^{n(H + zeta')}
    double probComplementBound;  // 2|X| exp(-2n (zeta/|X|)^2); may exceed 1
};

// Cardinality and complement-probability bounds for A^n_zeta; zeta' excludes
// zero-probability cells, mirroring the typicality indicator.
TypicalityBounds typicality_bounds(const JointDist& p, int n, double zeta);

// Lower bound on |A^n_delta(Y | x^n)| for typical x^n:
// 2^{n(H(Y|X) - delta1 - zeta2)} * alpha(delta).
double conditional_typical_count_lower_bound(const JointDist& pXY, const SymbolSeq& xSeq, int n,
                                             double zeta, double delta);

}  // namespace rdlab
