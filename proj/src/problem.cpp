#include "pms8/problem.hpp"

#include <stdexcept>

namespace pms8 {

void Problem::validate() const {
    if (sequences.empty()) throw std::invalid_argument("no input sequences");
    const int len = m();
    if (motif_length < 1) throw std::invalid_argument("motif length must be >= 1");
    if (motif_length > len)
        throw std::invalid_argument("motif length " + std::to_string(motif_length) +
                                    " exceeds sequence length " + std::to_string(len));
    if (max_mismatches < 0 || max_mismatches > motif_length)
        throw std::invalid_argument("mismatch budget must be in [0, l], got " +
                                    std::to_string(max_mismatches));
    for (size_t i = 0; i < sequences.size(); ++i) {
        if (static_cast<int>(sequences[i].size()) != len)
            throw std::invalid_argument("sequence " + std::to_string(i) + " has length " +
                                        std::to_string(sequences[i].size()) + ", expected " +
                                        std::to_string(len));
        for (size_t j = 0; j < sequences[i].size(); ++j)
            if (!alphabet.contains(sequences[i][j]))
                throw std::invalid_argument("sequence " + std::to_string(i) + ", position " +
                                            std::to_string(j) + ": symbol '" + sequences[i][j] +
                                            "' not in alphabet " + alphabet.name());
    }
}

}  // namespace pms8
