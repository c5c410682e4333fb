#pragma once

#include "rdlab/common.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace rdlab {

// A finite symbol set. Labels are optional display strings.
struct Alphabet {
    int size = 0;
    std::vector<std::string> labels;

    Alphabet() = default;

    explicit Alphabet(int s) : size(s) {
        if (s < 1) throw ValidationError("Alphabet: size must be >= 1");
    }

    Alphabet(int s, std::vector<std::string> l) : size(s), labels(std::move(l)) {
        if (s < 1) throw ValidationError("Alphabet: size must be >= 1");
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != s)
                throw ValidationError("Alphabet: label count must equal size");
            std::unordered_set<std::string> seen(labels.begin(), labels.end());
            if (static_cast<int>(seen.size()) != s)
                throw ValidationError("Alphabet: labels must be distinct");
        }
    }

    bool operator==(const Alphabet& o) const { return size == o.size; }
    bool operator!=(const Alphabet& o) const { return size != o.size; }
};

}  // namespace rdlab
