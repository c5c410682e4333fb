#pragma once

#include "rdlab/dist.hpp"
#include "rdlab/typicality.hpp"

#include <cstdint>
#include <vector>

namespace rdlab {

enum class EncoderRule {
    JointlyTypical,  // first codeword jointly typical with the input, else index 0
    MinHamming,      // nearest codeword in Hamming distance, lowest index ties
};

inline constexpr std::uint64_t kCodebookCap = std::uint64_t{1} << 22;

// A fixed-blocklength random quantizer: Theta codewords drawn uniformly with
// replacement from the tauHat-typical set of W, plus the encoding rule.
class QuantizerCodebook {
  public:
    QuantizerCodebook(int n, Alphabet sAlpha, Alphabet wAlpha, JointDist targetSW,
                      std::vector<std::vector<int>> codewords, EncoderRule rule, double tauHat,
                      bool formulaTheta);

    int n() const { return n_; }
    int theta() const { return static_cast<int>(codewords_.size()); }
    const std::vector<int>& codeword(int i) const {
        return codewords_[static_cast<std::size_t>(i)];
    }
    EncoderRule rule() const { return rule_; }
    double tau_hat() const { return tauHat_; }
    const JointDist& target_sw() const { return targetSW_; }
    const Alphabet& s_alphabet() const { return s_; }
    const Alphabet& w_alphabet() const { return w_; }
    bool formula_sized() const { return formulaTheta_; }

    double rate_per_symbol() const;  // log2(Theta) / n

    // Encoder index for a length-n source block.
    int encode(std::span<const int> sBlock) const;

  private:
    int n_;
    Alphabet s_, w_;
    JointDist targetSW_;
    std::vector<std::vector<int>> codewords_;
    EncoderRule rule_;
    double tauHat_;
    bool formulaTheta_;
};

// Codebook with Theta = ceil(2^{n(I(W;S) + theta_n(tau) - 1/n)}) and
// tauHat = tau(|S| + |W|). The rate bound log2(Theta)/n <= I + theta_n is
// asserted on every formula-sized build.
QuantizerCodebook build_quantizer(const JointDist& pS, const CondDist& pWgivenS, int n, double tau,
                                  EncoderRule rule, std::uint64_t seed,
                                  std::uint64_t thetaCap = kCodebookCap);

// Same sampling with an explicitly chosen codebook size (no rate assertion).
QuantizerCodebook build_quantizer_fixed(const JointDist& pS, const CondDist& pWgivenS, int n,
                                        double tau, int theta, EncoderRule rule,
                                        std::uint64_t seed);

struct CoveringResult {
    double failureProb = 0.0;  // P(d^n(S^n, Q(S^n)) > phi)
    double radius = 0.0;       // Hoeffding 99% radius (0 in exact mode)
    bool exact = false;
    double phi = 0.0;
    double phiBound = 0.0;  // phi' from the quantizer guarantee
    bool vacuous = false;   // phiBound >= 1
};

// Exact (enumerating S^n) or sampled covering failure probability, compared
// against the phi' guarantee.
CoveringResult measure_covering(const QuantizerCodebook& q, const JointDist& pS, double phi,
                                double phiBound, bool exactMode, long long samples,
                                std::uint64_t seed, std::uint64_t cap = kEnumerationCap);

}  // namespace rdlab
