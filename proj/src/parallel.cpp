#include "pms8/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace pms8 {

std::vector<Subproblem> split_subproblems(const Problem& problem) {
    problem.validate();
    const int count = problem.m() - problem.motif_length + 1;
    std::vector<Subproblem> out(static_cast<size_t>(count));
    for (int j = 0; j < count; ++j) out[static_cast<size_t>(j)].first_lmer_offset = static_cast<uint32_t>(j);
    return out;
}

int resolve_worker_count(std::optional<int> requested) {
    if (requested) {
        if (*requested < 1) throw std::invalid_argument("worker count must be >= 1");
        return *requested;
    }
    if (const char* env = std::getenv("WORKER_COUNT")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

MotifSet run_parallel(const Problem& problem, const SolverConfig& config,
                      const ParallelOptions& options, RunReport* report) {
    const auto t0 = std::chrono::steady_clock::now();
    const int workers = options.workers > 0 ? options.workers : resolve_worker_count(std::nullopt);

    SolverContext ctx(problem, config);
    const auto jobs = split_subproblems(problem);
    const auto job_count = static_cast<int64_t>(jobs.size());

    // per-job buffers: the merge order never depends on scheduling
    std::vector<std::vector<std::string>> results(jobs.size());
    std::atomic<int64_t> next_job{0};
    std::atomic<bool> failed{false};
    std::string failure;
    int64_t failed_offset = -1;

    SolveCounters counters;
    double pattern_seconds = 0;

#pragma omp parallel num_threads(workers) reduction(+ : pattern_seconds)
    {
        MotifSearch search(ctx);
        std::mt19937_64 jitter_rng(options.jitter_seed ^
                                   (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(omp_get_thread_num() + 1)));
        while (!failed.load(std::memory_order_relaxed)) {
            const int64_t j = next_job.fetch_add(1, std::memory_order_relaxed);
            if (j >= job_count) break;
            if (options.jitter_max_us > 0) {
                const auto us = jitter_rng() % options.jitter_max_us;
                std::this_thread::sleep_for(std::chrono::microseconds(us));
            }
            try {
                search.run_anchored(jobs[static_cast<size_t>(j)].first_lmer_offset,
                                    results[static_cast<size_t>(j)]);
            } catch (const std::exception& e) {
#pragma omp critical(pms8_parallel_failure)
                {
                    if (!failed.exchange(true)) {
                        failure = e.what();
                        failed_offset = jobs[static_cast<size_t>(j)].first_lmer_offset;
                    }
                }
            }
        }
        pattern_seconds += search.pattern_seconds();
#pragma omp critical(pms8_parallel_counters)
        counters.merge(search.counters());
    }

    if (failed.load())
        throw std::runtime_error("subproblem at offset " + std::to_string(failed_offset) +
                                 " failed: " + failure);

    std::vector<std::string> raw;
    for (auto& r : results) raw.insert(raw.end(), r.begin(), r.end());
    MotifSet motifs = canonical_motif_set(std::move(raw));

    if (report) {
        report->n = problem.n();
        report->m = problem.m();
        report->l = problem.motif_length;
        report->d = problem.max_mismatches;
        report->alphabet = problem.alphabet.name();
        report->threshold = ctx.threshold();
        report->workers = workers;
        report->subproblems = job_count;
        report->motif_count = static_cast<int64_t>(motifs.size());
        report->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report->pattern_seconds = pattern_seconds;
        report->sample_seconds = std::max(0.0, report->wall_seconds - pattern_seconds / workers);
        report->memory = ctx.memory();
        {
            RowMatrix probe(ctx.set());
            report->memory.row_matrix_words = static_cast<uint64_t>(workers) * probe.row_words();
            report->memory.row_bookkeeping_words =
                static_cast<uint64_t>(workers) *
                (probe.bookkeeping_words() +
                 static_cast<uint64_t>(ctx.threshold()) * static_cast<uint64_t>(ctx.set().total_lmers()) * 2 / 8);
        }
        report->counters = counters;
    }
    return motifs;
}

}  // namespace pms8
