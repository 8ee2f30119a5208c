#pragma once

#include <string>
#include <vector>

#include "pms8/alphabet.hpp"

namespace pms8 {

// One (l,d) search instance: n sequences of uniform length m.
struct Problem {
    std::vector<std::string> sequences;
    int motif_length = 0;    // l
    int max_mismatches = 0;  // d
    Alphabet alphabet = Alphabet::dna();

    int n() const { return static_cast<int>(sequences.size()); }
    int m() const { return sequences.empty() ? 0 : static_cast<int>(sequences[0].size()); }

    // throws std::invalid_argument when n, m, l, d or the symbols are off
    void validate() const;
};

}  // namespace pms8
