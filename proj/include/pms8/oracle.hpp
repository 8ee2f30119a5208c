#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pms8/alphabet.hpp"
#include "pms8/problem.hpp"

namespace pms8 {

// Brute-force ground truth. Everything here enumerates Sigma^l directly and
// compares symbols one by one; none of it shares distance or traversal code
// with the packed fast path.

// character-by-character Hamming distance
int naive_hamming(std::string_view a, std::string_view b);

// true iff every sequence has a window within d of motif; optionally reports
// one witness offset per sequence
bool naive_is_motif(const Problem& problem, std::string_view motif,
                    std::vector<int>* witness_offsets = nullptr);

// All (l,d) motifs by scanning Sigma^l. Rejects when |Sigma|^l exceeds the
// guard.
std::vector<std::string> brute_force_solve(const Problem& problem,
                                           int64_t enumeration_guard = 1000000);

// Some common neighbor of the tuple within per-element budgets, or nullopt.
// Deterministic: first match in code order (alphabetical for DNA).
std::optional<std::string> brute_force_common_neighbor(std::span<const std::string> tuple,
                                                       std::span<const int> budgets,
                                                       const Alphabet& alphabet,
                                                       int64_t enumeration_guard = 1000000);

}  // namespace pms8
