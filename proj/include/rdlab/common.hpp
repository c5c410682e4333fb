#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace rdlab {

// Error categories map onto CLI exit codes: validation/parse -> 2,
// infeasible sweeps and enumeration caps -> 3, hard-gate failures -> 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

struct CapExceededError : Error {
    using Error::Error;
};

struct GateError : Error {
    using Error::Error;
};

// Counter-based generator (SplitMix64 mixing over a derived key). Streams are
// addressed by (master seed, stream id, purpose id); draws depend only on the
// key and an internal counter, so trials can run on any number of workers
// without changing the sequence each trial sees.
class StreamRng {
  public:
    explicit StreamRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
        return mix(mix(mix(master) ^ a) ^ b);
    }

    std::uint64_t next_u64() {
        ctr_ += 0xD1B54A32D192ED03ULL;
        return mix(key_ ^ ctr_);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0,n) via rejection.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw ValidationError("StreamRng::next_below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = next_u64();
        while (r >= limit) r = next_u64();
        return r % n;
    }

    // Inverse-CDF draw from a pmf given as a contiguous span.
    int sample(std::span<const double> pmf) {
        const double u = next_unit();
        double acc = 0.0;
        for (std::size_t i = 0; i < pmf.size(); ++i) {
            acc += pmf[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(pmf.size()) - 1;
    }

    // In-place Fisher-Yates; out must be pre-sized.
    void fill_permutation(std::span<int> out) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
        for (std::size_t i = out.size(); i > 1; --i) {
            const std::uint64_t j = next_below(i);
            std::swap(out[i - 1], out[j]);
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace rdlab
