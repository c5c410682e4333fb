#include "rdlab/source.hpp"

#include <algorithm>

namespace rdlab {

namespace {

void check_table(const std::vector<double>& d, int size, const char* name) {
    if (d.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
        throw ValidationError(std::string(name) + ": distortion table must be square over the alphabet");
    for (double v : d)
        if (v < 0.0) throw ValidationError(std::string(name) + ": distortion must be nonnegative");
}

}  // namespace

DistributedSource::DistributedSource(Alphabet a1, Alphabet a2, JointDist p,
                                     std::vector<double> dist1, std::vector<double> dist2)
    : x1(std::move(a1)), x2(std::move(a2)), pmf(std::move(p)), d1(std::move(dist1)), d2(std::move(dist2)) {
    if (pmf.rank() != 2 || pmf.axis(0).size != x1.size || pmf.axis(1).size != x2.size)
        throw ValidationError("DistributedSource: pmf axes must be (X1, X2)");
    check_table(d1, x1.size, "DistributedSource d1");
    check_table(d2, x2.size, "DistributedSource d2");
}

double DistributedSource::d1_max() const { return *std::max_element(d1.begin(), d1.end()); }
double DistributedSource::d2_max() const { return *std::max_element(d2.begin(), d2.end()); }

SourceWithSideInfo::SourceWithSideInfo(Alphabet a1, Alphabet a2, Alphabet b1, Alphabet b2,
                                       JointDist p, std::vector<double> dist1,
                                       std::vector<double> dist2)
    : x1(std::move(a1)), x2(std::move(a2)), y1(std::move(b1)), y2(std::move(b2)),
      pmf(std::move(p)), d1(std::move(dist1)), d2(std::move(dist2)) {
    if (pmf.rank() != 4 || pmf.axis(0).size != x1.size || pmf.axis(1).size != x2.size ||
        pmf.axis(2).size != y1.size || pmf.axis(3).size != y2.size)
        throw ValidationError("SourceWithSideInfo: pmf axes must be (X1, X2, Y1, Y2)");
    check_table(d1, x1.size, "SourceWithSideInfo d1");
    check_table(d2, x2.size, "SourceWithSideInfo d2");
}

}  // namespace rdlab
