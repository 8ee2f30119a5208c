#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pms8/problem.hpp"
#include "pms8/report.hpp"
#include "pms8/solver.hpp"

namespace pms8 {

// One subproblem per l-mer of the first sequence: the first row collapses to
// that single window, the remaining rows are unchanged. The union over all
// offsets of the per-subproblem motif sets is the full answer.
struct Subproblem {
    uint32_t first_lmer_offset = 0;
};

std::vector<Subproblem> split_subproblems(const Problem& problem);

struct ParallelOptions {
    int workers = 0;  // 0: WORKER_COUNT env var, then hardware parallelism
    // test hook: sleep up to jitter_max_us (seeded per worker) before each
    // job to shake out scheduling-order dependence
    uint32_t jitter_max_us = 0;
    uint64_t jitter_seed = 0;
};

// CLI value if given, else WORKER_COUNT env var, else hardware concurrency.
int resolve_worker_count(std::optional<int> requested);

// Pull-based scheduling: workers grab the next pending subproblem off an
// atomic counter until exhaustion; per-job result buffers merge into one
// MotifSet after the parallel region. Output is identical for any worker
// count. A worker failure aborts the run naming the subproblem offset.
MotifSet run_parallel(const Problem& problem, const SolverConfig& config,
                      const ParallelOptions& options, RunReport* report = nullptr);

}  // namespace pms8
