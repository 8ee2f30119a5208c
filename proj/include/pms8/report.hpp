#pragma once

#include <cstdint>
#include <string>

namespace pms8 {

// Word (8-byte) counts of the instance-scaled structures, plus the constant
// 2^16 lookup tables reported separately.
struct MemoryBreakdown {
    uint64_t pair_matrix_words = 0;
    uint64_t row_matrix_words = 0;
    uint64_t row_bookkeeping_words = 0;
    uint64_t packed_words = 0;
    uint64_t lookup_table_words = 0;

    uint64_t tracked_total_words() const {
        return pair_matrix_words + row_matrix_words + row_bookkeeping_words + packed_words;
    }
    // n(n + m-l+1) + K^2/w reference: row storage + row sizes + pair bits
    static uint64_t reference_bound_words(int n, int m, int l) {
        const uint64_t k = static_cast<uint64_t>(n) * (m - l + 1);
        return static_cast<uint64_t>(n) * (static_cast<uint64_t>(n) + (m - l + 1)) +
               (k * k + 63) / 64;
    }
};

struct SolveCounters {
    int64_t stacks_explored = 0;      // l-mers pushed
    int64_t neighborhoods = 0;        // pattern-driven switches
    int64_t neighbors_visited = 0;    // candidates generated
    int64_t motifs_emitted = 0;       // candidates that verified (pre-dedup)

    void merge(const SolveCounters& other) {
        stacks_explored += other.stacks_explored;
        neighborhoods += other.neighborhoods;
        neighbors_visited += other.neighbors_visited;
        motifs_emitted += other.motifs_emitted;
    }
};

// Everything needed to reproduce and audit one run.
struct RunReport {
    int n = 0, m = 0, l = 0, d = 0;
    std::string alphabet;
    int threshold = 0;
    int workers = 1;
    int64_t subproblems = 0;
    int64_t motif_count = 0;
    double wall_seconds = 0;
    double sample_seconds = 0;   // stack building + filtering
    double pattern_seconds = 0;  // neighborhood generation + verification
    MemoryBreakdown memory;
    SolveCounters counters;
    std::string command;
};

}  // namespace pms8
