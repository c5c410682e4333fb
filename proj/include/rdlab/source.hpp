#pragma once

#include "rdlab/dist.hpp"

#include <vector>

namespace rdlab {

// A two-terminal discrete memoryless source with per-terminal distortion
// tables. Reconstruction alphabets equal the source alphabets.
struct DistributedSource {
    Alphabet x1, x2;
    JointDist pmf;           // axes (X1, X2)
    std::vector<double> d1;  // |X1| x |X1| row-major, d1[x][xhat]
    std::vector<double> d2;  // |X2| x |X2| row-major

    DistributedSource(Alphabet a1, Alphabet a2, JointDist p, std::vector<double> dist1,
                      std::vector<double> dist2);

    double d1_at(int x, int xhat) const {
        return d1[static_cast<std::size_t>(x) * static_cast<std::size_t>(x1.size) +
                  static_cast<std::size_t>(xhat)];
    }
    double d2_at(int x, int xhat) const {
        return d2[static_cast<std::size_t>(x) * static_cast<std::size_t>(x2.size) +
                  static_cast<std::size_t>(xhat)];
    }
    double d1_max() const;
    double d2_max() const;
};

// Distributed source with encoder/decoder side-information (Y1 at encoder 1,
// Y2 at encoder 2, both at the decoder).
struct SourceWithSideInfo {
    Alphabet x1, x2, y1, y2;
    JointDist pmf;  // axes (X1, X2, Y1, Y2)
    std::vector<double> d1, d2;

    SourceWithSideInfo(Alphabet a1, Alphabet a2, Alphabet b1, Alphabet b2, JointDist p,
                       std::vector<double> dist1, std::vector<double> dist2);

    double d1_at(int x, int xhat) const {
        return d1[static_cast<std::size_t>(x) * static_cast<std::size_t>(x1.size) +
                  static_cast<std::size_t>(xhat)];
    }
    double d2_at(int x, int xhat) const {
        return d2[static_cast<std::size_t>(x) * static_cast<std::size_t>(x2.size) +
                  static_cast<std::size_t>(xhat)];
    }
};

}  // namespace rdlab
