#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pms8/packed_seq.hpp"

namespace pms8 {

// Per-l-mer mismatch budgets d_1..d_k for a tuple of k l-mers.
using Budgets = std::vector<int>;

// Column classification for a tuple of 3 l-mers:
//   n0: all three equal          n1: first differs from equal second/third
//   n2: second differs           n3: third differs
//   n4: all three distinct
struct ColumnProfile {
    int n0 = 0, n1 = 0, n2 = 0, n3 = 0, n4 = 0;
    int consensus_distance() const { return n1 + n2 + n3 + 2 * n4; }
};

// Cd(T): sum over columns of (|T| - max character frequency in the column).
// A lower bound on the total distance from any l-mer to the tuple.
int consensus_total_distance(std::span<const std::string_view> tuple);

// Two l-mers have a common neighbor M with Hd(a,M) <= da and Hd(b,M) <= db
// iff Hd(a,b) <= da+db.
bool pair_compatible(std::string_view a, std::string_view b, int da, int db);

ColumnProfile column_profile3(std::string_view a, std::string_view b, std::string_view c);

// Necessary and sufficient conditions for three l-mers to share a common
// neighbor within budgets (d1,d2,d3):
//   i)  pairwise Hd <= d_i + d_j
//   ii) Cd({a,b,c}) <= d1 + d2 + d3
bool triple_common_neighbor_exists(std::string_view a, std::string_view b, std::string_view c,
                                   const Budgets& budgets);

// Constructs a common neighbor whenever one exists (nullopt otherwise).
// Column choices are deterministic: lowest column indexes first, and free
// columns copy the first l-mer.
std::optional<std::string> triple_witness(std::string_view a, std::string_view b,
                                          std::string_view c, const Budgets& budgets);

// Cd(T) <= sum(d_i): necessary for any k, sufficient only for k <= 3 in
// combination with the pairwise conditions.
bool necessary_condition_k(std::span<const std::string_view> tuple, const Budgets& budgets);

// --- packed fast path -------------------------------------------------------

// Pairwise distances and all-distinct column count for three packed l-mers;
// consensus() recovers Cd via Cd = (h12+h13+h23+n4)/2.
struct TripleStats {
    int h12 = 0, h13 = 0, h23 = 0, n4 = 0;
    int consensus() const { return (h12 + h13 + h23 + n4) / 2; }
};

TripleStats triple_stats(const PackedSequenceSet& set, const GroupPopcountTable& table,
                         LmerRef a, LmerRef b, LmerRef c);

bool triple_common_neighbor_exists(const PackedSequenceSet& set, const GroupPopcountTable& table,
                                   LmerRef a, LmerRef b, LmerRef c, int d1, int d2, int d3);

}  // namespace pms8
