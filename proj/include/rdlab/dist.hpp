#pragma once

#include "rdlab/alphabet.hpp"
#include "rdlab/common.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rdlab {

// Dense probability tensor over an ordered list of finite axes, row-major
// with axis 0 slowest. Entries are validated nonnegative and summing to 1
// within 1e-12 on construction; alphabets in scope are tiny, so everything
// is stored flat.
class JointDist {
  public:
    JointDist(std::vector<Alphabet> axes, std::vector<double> probs);

    static JointDist uniform(std::vector<Alphabet> axes);
    static JointDist point_mass(std::vector<Alphabet> axes, std::span<const int> idx);

    // Builds the tensor cell by cell from f(index-tuple).
    static JointDist from_function(std::vector<Alphabet> axes,
                                   const std::function<double(std::span<const int>)>& f);

    int rank() const { return static_cast<int>(axes_.size()); }
    const Alphabet& axis(int i) const { return axes_.at(static_cast<std::size_t>(i)); }
    const std::vector<Alphabet>& axes() const { return axes_; }
    std::size_t cells() const { return p_.size(); }

    double operator[](std::size_t flat) const { return p_[flat]; }
    const std::vector<double>& probs() const { return p_; }

    std::size_t flat_index(std::span<const int> idx) const;
    void unflatten(std::size_t flat, std::span<int> out) const;
    double at(std::span<const int> idx) const { return p_[flat_index(idx)]; }

    // Marginal onto the listed axes, in the listed order.
    JointDist marginal(std::span<const int> keep) const;

    bool same_axes(const JointDist& o) const;

    double min_cell() const;

  private:
    std::vector<Alphabet> axes_;
    std::vector<double> p_;
    std::vector<std::size_t> strides_;

    void init_strides();
};

// Conditional distribution: one probability vector over the destination axes
// per source index. Stored as a fromCells x toCells row-major kernel; every
// row must sum to 1 within 1e-12.
class CondDist {
  public:
    CondDist(std::vector<Alphabet> from, std::vector<Alphabet> to, std::vector<double> kernel);

    static CondDist identity(const Alphabet& a);
    static CondDist constant(std::vector<Alphabet> from, const Alphabet& to, int value);
    static CondDist bsc(double crossover);  // binary symmetric channel

    const std::vector<Alphabet>& from_axes() const { return from_; }
    const std::vector<Alphabet>& to_axes() const { return to_; }
    std::size_t from_cells() const { return fromCells_; }
    std::size_t to_cells() const { return toCells_; }

    double kernel(std::size_t fromFlat, std::size_t toFlat) const {
        return k_[fromFlat * toCells_ + toFlat];
    }
    std::span<const double> row(std::size_t fromFlat) const {
        return {k_.data() + fromFlat * toCells_, toCells_};
    }
    const std::vector<double>& raw() const { return k_; }

  private:
    std::vector<Alphabet> from_, to_;
    std::vector<double> k_;
    std::size_t fromCells_ = 0, toCells_ = 0;
};

}  // namespace rdlab
