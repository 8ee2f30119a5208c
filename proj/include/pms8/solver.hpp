#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pms8/neighborhood.hpp"
#include "pms8/packed_seq.hpp"
#include "pms8/problem.hpp"
#include "pms8/pruning.hpp"
#include "pms8/report.hpp"

namespace pms8 {

// Deduplicated, lexicographically sorted motif strings.
using MotifSet = std::vector<std::string>;

// Merges raw per-search outputs into canonical MotifSet order.
MotifSet canonical_motif_set(std::vector<std::string> motifs);

struct SolverConfig {
    std::optional<int> threshold_override;  // stack size that triggers enumeration
    bool sort_rows = true;
    bool use_pair_matrix = true;
    std::optional<int64_t> max_motifs;      // raw emission cap; exceeding it throws
    bool reverify_against_originals = false;
    PruneLevel prune_level = PruneLevel::full;
};

// Symmetric K x K bitset with bit(u,v) = (Hd(u,v) <= 2d), flat-indexed so the
// allocation is exactly ceil(K^2 / 64) words.
class PairCompatibilityMatrix {
public:
    PairCompatibilityMatrix(const PackedSequenceSet& set, const GroupPopcountTable& table, int d);

    bool compatible(uint32_t u, uint32_t v) const {
        const uint64_t bit = static_cast<uint64_t>(u) * k_ + v;
        return (bits_[bit >> 6] >> (bit & 63)) & 1;
    }
    uint64_t words() const { return bits_.size(); }
    int64_t lmer_count() const { return k_; }

private:
    std::vector<uint64_t> bits_;
    uint64_t k_ = 0;
};

// Appendix-style balance of the two phases: Time_s(t) grows with the stack
// depth t, Time_p(t) shrinks; pick t in [2, n] minimizing max of the two.
struct ThresholdCurvePoint {
    int t = 0;
    double log_time_sample = 0;
    double log_time_pattern = 0;
};

std::vector<ThresholdCurvePoint> threshold_curve(int n, int m, int l, int d, int sigma);
int estimate_threshold(int n, int m, int l, int d, int sigma);

// Shared, immutable context for one instance: packed sequences, lookup
// tables, pair-compatibility bits and the resolved threshold. Safe for
// concurrent reads from any number of searches.
class SolverContext {
public:
    SolverContext(const Problem& problem, const SolverConfig& config);

    const Problem& problem() const { return problem_; }
    const SolverConfig& config() const { return config_; }
    const PackedSequenceSet& set() const { return set_; }
    const GroupPopcountTable& table() const { return table_; }
    const PairCompatibilityMatrix* pairs() const { return pairs_.get(); }
    int d() const { return problem_.max_mismatches; }
    int threshold() const { return threshold_; }
    MemoryBreakdown memory() const;

private:
    Problem problem_;
    SolverConfig config_;
    PackedSequenceSet set_;
    GroupPopcountTable table_;
    std::unique_ptr<PairCompatibilityMatrix> pairs_;
    int threshold_ = 0;
};

// Per-sequence rows of surviving l-mer ids. Filtering partitions a row in
// place so survivors stay a prefix; a frame stack of saved counts and row
// order gives O(1) undo per depth.
class RowMatrix {
public:
    RowMatrix(const PackedSequenceSet& set);

    int rows() const { return n_; }
    int row_at_position(int pos) const { return order_[static_cast<size_t>(pos)]; }
    int position_of_row(int row) const;
    int live_count(int row) const { return live_[static_cast<size_t>(row)]; }
    std::span<const uint32_t> live(int row) const {
        return {storage_.data() + static_cast<size_t>(row) * width_,
                static_cast<size_t>(live_[static_cast<size_t>(row)])};
    }
    uint32_t* mutable_row(int row) { return storage_.data() + static_cast<size_t>(row) * width_; }
    void set_live(int row, int count) { live_[static_cast<size_t>(row)] = count; }

    // keep only the anchor window in a row (subproblem construction)
    void restrict_row(int row, uint32_t lmer_id);

    // all rows full, identity order, empty frame stack
    void reset_full();

    void push_frame(int from_position);
    void pop_frame();
    int frames() const { return static_cast<int>(frame_count_); }

    // ascending live count for positions >= from_position, stable
    void sort_rows_by_size(int from_position);

    uint64_t row_words() const;
    uint64_t bookkeeping_words() const;

private:
    int n_ = 0;
    size_t width_ = 0;
    std::vector<uint32_t> storage_;  // n * (m-l+1) l-mer ids, row-major
    std::vector<int> live_;
    std::vector<int> order_;         // position -> row
    std::vector<int> frame_store_;   // saved (live, order) pairs per depth
    size_t frame_count_ = 0;
};

// One sample-driven search: owns its RowMatrix and stack, shares the context.
// push() filters every not-yet-consumed row against the new stack top and
// reports whether all later rows stayed non-empty; pop() undoes in O(n).
class MotifSearch {
public:
    explicit MotifSearch(const SolverContext& ctx);

    // full Algorithm-2 recursion over this search's rows; found motifs are
    // appended raw (duplicates possible, canonicalized by the caller)
    void run(std::vector<std::string>& out);
    // restrict the search to subproblem anchor S_first[offset..]
    void run_anchored(uint32_t anchor_offset, std::vector<std::string>& out);

    bool push(uint32_t lmer_id);
    void pop();
    int depth() const { return static_cast<int>(stack_.size()); }
    const RowMatrix& rows() const { return rows_; }

    // pattern-driven switch: enumerate the stack's common d-neighborhood and
    // keep candidates with a surviving witness in every remaining row
    void enumerate_and_collect(std::vector<std::string>& out);
    bool verify_candidate(const uint8_t* codes, std::span<const int> remaining);

    const SolveCounters& counters() const { return counters_; }
    double pattern_seconds() const { return pattern_seconds_; }

private:
    void reset();
    void recurse(std::vector<std::string>& out);
    void emit(const uint8_t* codes, std::vector<std::string>& out);

    const SolverContext& ctx_;
    RowMatrix rows_;
    std::vector<uint32_t> stack_;
    NeighborhoodEnumerator enumerator_;
    SolveCounters counters_;
    double pattern_seconds_ = 0;

    // per-depth scratch, preallocated
    std::vector<std::vector<uint32_t>> snapshot_;        // row contents at loop entry
    std::vector<uint16_t> dist_to_stack_;                // depth-major: [depth][slot]
    std::vector<std::array<uint64_t, 32>> stack_chunks_;   // packed chunks per stack entry
    std::vector<std::array<uint64_t, 32>> stack_top_fold_; // folded stack[i]^top masks
    std::vector<int> stack_pair_dist_;                   // Hd(stack[i], top)
    std::vector<uint8_t> tuple_codes_;                   // stack codes for enumeration
    std::vector<int> budget_scratch_;
};

// End-to-end single-threaded solve of the whole instance.
MotifSet solve(const Problem& problem, const SolverConfig& config = {}, RunReport* report = nullptr);

}  // namespace pms8
