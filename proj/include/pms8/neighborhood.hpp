#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pms8/alphabet.hpp"
#include "pms8/pruning.hpp"

namespace pms8 {

// How aggressively the tree walk is cut. Every level visits exactly the same
// set of leaves; stronger levels just do it faster.
enum class PruneLevel {
    none,   // plain Sigma^l walk, keep only the leaf budget check
    pairs,  // exhausted budgets + pairwise suffix conditions
    full,   // pairs + 3-l-mer conditions + consensus bound on the whole tuple
};

// Node predicate over the tuple suffixes from the current depth: true means
// no completion can satisfy the remaining budgets, so the subtree is cut.
bool prune_node(std::span<const std::string_view> suffixes, std::span<const int> remaining,
                PruneLevel level = PruneLevel::full);

// Visits every l-mer M with Hd(M, T_i) <= d for all i, in code order (one
// call per neighbor, no duplicates). Returns the neighbor count.
int64_t generate_common_neighborhood(std::span<const std::string> tuple, int d,
                                     const Alphabet& alphabet,
                                     const std::function<void(std::string_view)>& visit,
                                     PruneLevel level = PruneLevel::full);

// Depth-first enumerator over code arrays, reusable across tuples. Suffix
// pair distances, per-triple all-distinct column counts and the suffix
// consensus distance are precomputed per depth, so a node test only touches
// the remaining budgets. Budget-dependent conditions are rechecked only on
// edges that consumed budget; suffix-only quantities shrink with depth and
// cannot start failing on a match edge.
class NeighborhoodEnumerator {
public:
    NeighborhoodEnumerator(int sigma, int max_length);

    // tuple: k consecutive rows of l codes each
    void prepare(const uint8_t* tuple, int k, int l, std::span<const int> budgets, PruneLevel level);

    // budgets left at the current node; at a leaf, d - remaining[i] is the
    // exact distance from the emitted l-mer to tuple member i
    std::span<const int> remaining_budgets() const { return budget_; }

    // leaf receives (codes, l); returns the number of leaves visited
    template <typename Leaf>
    int64_t enumerate(Leaf&& leaf) {
        visited_ = 0;
        if (k_ == 0) return 0;
        descend(0, true, -1, leaf);
        return visited_;
    }

private:
    bool prune(int p, int rep) const;

    template <typename Leaf>
    void descend(int p, bool budget_spent, int rep, Leaf& leaf) {
        if (p == l_) {
            for (int i = 0; i < k_; ++i)
                if (budget_[static_cast<size_t>(i)] < 0) return;
            ++visited_;
            leaf(candidate_.data(), l_);
            return;
        }
        if (budget_spent && level_ != PruneLevel::none && prune(p, rep)) return;
        for (int a = 0; a < sigma_; ++a) {
            candidate_[static_cast<size_t>(p)] = static_cast<uint8_t>(a);
            bool spent = false;
            int next_rep = -1;
            for (int i = 0; i < k_; ++i) {
                if (codes_[static_cast<size_t>(i) * l_ + p] != a) {
                    const int r = --budget_[static_cast<size_t>(i)];
                    spent = true;
                    if (next_rep < 0 || r < budget_[static_cast<size_t>(next_rep)]) next_rep = i;
                }
            }
            descend(p + 1, spent, next_rep, leaf);
            for (int i = 0; i < k_; ++i)
                if (codes_[static_cast<size_t>(i) * l_ + p] != a) ++budget_[static_cast<size_t>(i)];
        }
    }

    int sigma_;
    int k_ = 0, l_ = 0;
    PruneLevel level_ = PruneLevel::full;
    int64_t visited_ = 0;

    std::vector<uint8_t> codes_;      // k*l tuple codes
    std::vector<uint8_t> candidate_;  // current prefix
    std::vector<int> budget_;         // remaining mismatches per tuple member

    struct Pair {
        int i, j;
    };
    struct Triple {
        int i, j, h;
        int pij, pih, pjh;  // indexes into pairs_
    };
    std::vector<Pair> pairs_;
    std::vector<Triple> triples_;
    std::vector<std::vector<int>> triples_of_;  // triple indexes touching member i
    std::vector<int> pair_suffix_;              // (l+1) x pairs_: suffix Hamming distance
    std::vector<int> triple_suffix_n4_;         // (l+1) x triples_: suffix all-distinct columns
    std::vector<int> consensus_suffix_;         // (l+1): suffix Cd over the whole tuple
};

}  // namespace pms8
