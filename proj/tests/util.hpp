#pragma once

#include <random>
#include <string>
#include <vector>

#include "pms8/alphabet.hpp"

namespace testutil {

inline std::string random_string(std::mt19937_64& rng, const pms8::Alphabet& alpha, int len) {
    std::string s(static_cast<size_t>(len), '\0');
    std::uniform_int_distribution<int> pick(0, alpha.size() - 1);
    for (char& c : s) c = alpha.symbol(static_cast<uint8_t>(pick(rng)));
    return s;
}

inline std::vector<std::string> random_strings(std::mt19937_64& rng, const pms8::Alphabet& alpha,
                                               int count, int len) {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(random_string(rng, alpha, len));
    return out;
}

// independent per-character distance for checking the table-driven one
inline int char_hamming(const std::string& a, const std::string& b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace testutil
