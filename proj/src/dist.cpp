#include "rdlab/dist.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace rdlab {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kNegClamp = -1e-15;

std::size_t cell_count(const std::vector<Alphabet>& axes) {
    if (axes.empty()) throw ValidationError("JointDist: at least one axis required");
    std::size_t c = 1;
    for (const auto& a : axes) {
        if (a.size < 1) throw ValidationError("JointDist: axis size must be >= 1");
        c *= static_cast<std::size_t>(a.size);
    }
    return c;
}

}  // namespace

void JointDist::init_strides() {
    strides_.assign(axes_.size(), 1);
    for (int i = static_cast<int>(axes_.size()) - 2; i >= 0; --i)
        strides_[static_cast<std::size_t>(i)] =
            strides_[static_cast<std::size_t>(i) + 1] *
            static_cast<std::size_t>(axes_[static_cast<std::size_t>(i) + 1].size);
}

JointDist::JointDist(std::vector<Alphabet> axes, std::vector<double> probs)
    : axes_(std::move(axes)), p_(std::move(probs)) {
    const std::size_t c = cell_count(axes_);
    if (p_.size() != c) throw ValidationError("JointDist: probability count does not match axes");
    double sum = 0.0;
    for (double& v : p_) {
        if (v < 0.0) {
            if (v < kNegClamp) throw ValidationError("JointDist: negative probability entry");
            v = 0.0;
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol)
        throw ValidationError("JointDist: entries must sum to 1 within 1e-12");
    init_strides();
}

JointDist JointDist::uniform(std::vector<Alphabet> axes) {
    const std::size_t c = cell_count(axes);
    return JointDist(std::move(axes), std::vector<double>(c, 1.0 / static_cast<double>(c)));
}

JointDist JointDist::point_mass(std::vector<Alphabet> axes, std::span<const int> idx) {
    const std::size_t c = cell_count(axes);
    std::vector<double> p(c, 0.0);
    JointDist tmp(axes, std::vector<double>(c, 1.0 / static_cast<double>(c)));
    p[tmp.flat_index(idx)] = 1.0;
    return JointDist(std::move(axes), std::move(p));
}

JointDist JointDist::from_function(std::vector<Alphabet> axes,
                                   const std::function<double(std::span<const int>)>& f) {
    const std::size_t c = cell_count(axes);
    std::vector<double> p(c);
    std::vector<int> idx(axes.size(), 0);
    for (std::size_t flat = 0; flat < c; ++flat) {
        p[flat] = f(idx);
        for (int ax = static_cast<int>(axes.size()) - 1; ax >= 0; --ax) {
            auto u = static_cast<std::size_t>(ax);
            if (++idx[u] < axes[u].size) break;
            idx[u] = 0;
        }
    }
    return JointDist(std::move(axes), std::move(p));
}

std::size_t JointDist::flat_index(std::span<const int> idx) const {
    if (idx.size() != axes_.size()) throw ValidationError("JointDist: index rank mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= axes_[i].size)
            throw ValidationError("JointDist: index out of range");
        flat += static_cast<std::size_t>(idx[i]) * strides_[i];
    }
    return flat;
}

void JointDist::unflatten(std::size_t flat, std::span<int> out) const {
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        out[i] = static_cast<int>(flat / strides_[i]);
        flat %= strides_[i];
    }
}

JointDist JointDist::marginal(std::span<const int> keep) const {
    if (keep.empty()) throw ValidationError("JointDist::marginal: empty axis subset");
    std::vector<Alphabet> outAxes;
    std::vector<bool> used(axes_.size(), false);
    for (int a : keep) {
        if (a < 0 || a >= rank()) throw ValidationError("JointDist::marginal: invalid axis index");
        if (used[static_cast<std::size_t>(a)])
            throw ValidationError("JointDist::marginal: repeated axis index");
        used[static_cast<std::size_t>(a)] = true;
        outAxes.push_back(axes_[static_cast<std::size_t>(a)]);
    }
    std::size_t outCells = 1;
    for (const auto& a : outAxes) outCells *= static_cast<std::size_t>(a.size);

    // outStride[i] is the contribution of axis i's coordinate to the output
    // flat index (0 for axes being summed out; keep may reorder axes).
    std::vector<std::size_t> outStride(axes_.size(), 0);
    std::size_t stride = 1;
    for (std::size_t j = keep.size(); j-- > 0;) {
        outStride[static_cast<std::size_t>(keep[j])] = stride;
        stride *= static_cast<std::size_t>(outAxes[j].size);
    }

    std::vector<double> out(outCells, 0.0);
    for (std::size_t flat = 0; flat < p_.size(); ++flat) {
        std::size_t outFlat = 0;
        std::size_t rem = flat;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            const std::size_t coord = rem / strides_[i];
            rem %= strides_[i];
            outFlat += coord * outStride[i];
        }
        out[outFlat] += p_[flat];
    }
    return JointDist(std::move(outAxes), std::move(out));
}

bool JointDist::same_axes(const JointDist& o) const {
    if (axes_.size() != o.axes_.size()) return false;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].size != o.axes_[i].size) return false;
    return true;
}

double JointDist::min_cell() const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : p_) m = std::min(m, v);
    return m;
}

CondDist::CondDist(std::vector<Alphabet> from, std::vector<Alphabet> to, std::vector<double> kernel)
    : from_(std::move(from)), to_(std::move(to)), k_(std::move(kernel)) {
    fromCells_ = cell_count(from_);
    toCells_ = cell_count(to_);
    if (k_.size() != fromCells_ * toCells_)
        throw ValidationError("CondDist: kernel size does not match axes");
    for (std::size_t r = 0; r < fromCells_; ++r) {
        double sum = 0.0;
        for (std::size_t c = 0; c < toCells_; ++c) {
            double& v = k_[r * toCells_ + c];
            if (v < 0.0) {
                if (v < kNegClamp) throw ValidationError("CondDist: negative kernel entry");
                v = 0.0;
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSumTol)
            throw ValidationError("CondDist: conditional slice must sum to 1 within 1e-12");
    }
}

CondDist CondDist::identity(const Alphabet& a) {
    const auto s = static_cast<std::size_t>(a.size);
    std::vector<double> k(s * s, 0.0);
    for (std::size_t i = 0; i < s; ++i) k[i * s + i] = 1.0;
    return CondDist({a}, {a}, std::move(k));
}

CondDist CondDist::constant(std::vector<Alphabet> from, const Alphabet& to, int value) {
    if (value < 0 || value >= to.size) throw ValidationError("CondDist::constant: value out of range");
    const std::size_t fc = cell_count(from);
    std::vector<double> k(fc * static_cast<std::size_t>(to.size), 0.0);
    for (std::size_t r = 0; r < fc; ++r) k[r * static_cast<std::size_t>(to.size) + static_cast<std::size_t>(value)] = 1.0;
    return CondDist(std::move(from), {to}, std::move(k));
}

CondDist CondDist::bsc(double crossover) {
    if (crossover < 0.0 || crossover > 1.0)
        throw ValidationError("CondDist::bsc: crossover must be in [0,1]");
    Alphabet b(2);
    return CondDist({b}, {b}, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
}

}  // namespace rdlab
