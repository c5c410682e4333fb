#include "rdlab/info.hpp"

#include <cmath>
#include <vector>

namespace rdlab {

namespace {

constexpr double kClampTol = 1e-10;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double clamp_nonneg(double v) { return (v < 0.0 && v > -kClampTol) ? 0.0 : v; }

void check_disjoint(std::span<const int> a, std::span<const int> b, const char* what) {
    for (int i : a)
        for (int j : b)
            if (i == j) throw ValidationError(std::string(what) + ": axis subsets overlap");
}

std::vector<int> concat(std::span<const int> a, std::span<const int> b) {
    std::vector<int> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw ValidationError("binary_entropy: p must be in [0,1]");
    return plogp(p) + plogp(1.0 - p);
}

double binary_convolve(double a, double b) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
        throw ValidationError("binary_convolve: arguments must be in [0,1]");
    return a * (1.0 - b) + b * (1.0 - a);
}

double entropy(const JointDist& d, std::span<const int> axes) {
    if (axes.empty()) throw ValidationError("entropy: empty axis subset");
    const JointDist m = d.marginal(axes);
    double h = 0.0;
    for (double p : m.probs()) h += plogp(p);
    return h;
}

double mutual_info(const JointDist& d, std::span<const int> a, std::span<const int> b) {
    check_disjoint(a, b, "mutual_info");
    const auto ab = concat(a, b);
    return clamp_nonneg(entropy(d, a) + entropy(d, b) - entropy(d, ab));
}

double cond_mutual_info(const JointDist& d, std::span<const int> a, std::span<const int> b,
                        std::span<const int> c) {
    check_disjoint(a, b, "cond_mutual_info");
    check_disjoint(a, c, "cond_mutual_info");
    check_disjoint(b, c, "cond_mutual_info");
    if (c.empty()) return mutual_info(d, a, b);
    const auto ac = concat(a, c);
    const auto bc = concat(b, c);
    const auto abc = concat(a, bc);
    return clamp_nonneg(entropy(d, ac) + entropy(d, bc) - entropy(d, abc) - entropy(d, c));
}

double variational_distance(const JointDist& p, const JointDist& q) {
    if (!p.same_axes(q)) throw ValidationError("variational_distance: axis mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.cells(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double entropy_continuity_bound(double v, int alphabetSize) {
    if (v < 0.0 || v > 1.0) throw ValidationError("entropy_continuity_bound: v must be in [0,1]");
    if (alphabetSize < 2) throw ValidationError("entropy_continuity_bound: alphabet size must be >= 2");
    return binary_entropy(v) + v * std::log2(static_cast<double>(alphabetSize - 1));
}

MiContinuityBounds mi_continuity_bounds(double v, int alphabetSize) {
    if (v < 0.0 || v > 1.0) throw ValidationError("mi_continuity_bounds: v must be in [0,1]");
    if (alphabetSize < 1) throw ValidationError("mi_continuity_bounds: alphabet size must be >= 1");
    const double base = binary_entropy(v) + v * std::log2(static_cast<double>(alphabetSize));
    return {4.0 * base, 8.0 * base};
}

}  // namespace rdlab
