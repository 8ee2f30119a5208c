// Compares the serial solver against the OpenMP worker pool on one planted
// instance, and optionally sweeps enumeration prune levels.
#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pms8/instance.hpp"
#include "pms8/parallel.hpp"
#include "pms8/solver.hpp"

namespace {

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pms8_bench: serial reference vs OpenMP worker pool"};
    int l = 13, d = 4, n = 20, m = 600;
    uint64_t seed = 1;
    int repeats = 1;
    std::vector<int> worker_counts{1, 2, 4, 8};
    bool sweep_prune = false;
    app.add_option("-l", l, "motif length");
    app.add_option("-d", d, "mismatch budget");
    app.add_option("-n", n, "number of sequences");
    app.add_option("-m", m, "sequence length");
    app.add_option("--seed", seed, "instance seed");
    app.add_option("--workers", worker_counts, "worker counts to time");
    app.add_option("--repeats", repeats, "repetitions per configuration");
    app.add_flag("--sweep-prune", sweep_prune, "also time prune levels none/pairs/full");
    CLI11_PARSE(app, argc, argv);

    pms8::PlantedInstanceSpec spec;
    spec.l = l;
    spec.d = d;
    spec.n = n;
    spec.m = m;
    spec.seed = seed;
    const pms8::PlantedInstance inst = pms8::generate_planted_instance(spec);
    std::cout << "instance: (" << l << "," << d << ") n=" << n << " m=" << m << " seed=" << seed
              << " planted=" << inst.motif << "\n\n";

    pms8::SolverConfig config;

    double serial_best = 0;
    {
        double best = 1e300;
        size_t motifs = 0;
        for (int r = 0; r < repeats; ++r) {
            const double t0 = now_seconds();
            const auto result = pms8::solve(inst.problem, config);
            best = std::min(best, now_seconds() - t0);
            motifs = result.size();
        }
        serial_best = best;
        std::cout << "serial reference   " << best << " s   (" << motifs << " motifs)\n";
    }

    std::cout << "\nworkers  seconds   speedup\n";
    for (int w : worker_counts) {
        pms8::ParallelOptions par;
        par.workers = w;
        double best = 1e300;
        for (int r = 0; r < repeats; ++r) {
            const double t0 = now_seconds();
            const auto result = pms8::run_parallel(inst.problem, config, par);
            best = std::min(best, now_seconds() - t0);
            (void)result;
        }
        std::cout << w << "        " << best << "   " << serial_best / best << "x\n";
    }

    if (sweep_prune) {
        std::cout << "\nprune level sweep (1 worker):\n";
        for (auto [name, level] : {std::pair{"none", pms8::PruneLevel::none},
                                   std::pair{"pairs", pms8::PruneLevel::pairs},
                                   std::pair{"full", pms8::PruneLevel::full}}) {
            pms8::SolverConfig c = config;
            c.prune_level = level;
            pms8::ParallelOptions par;
            par.workers = 1;
            const double t0 = now_seconds();
            const auto result = pms8::run_parallel(inst.problem, c, par);
            std::cout << name << "  " << (now_seconds() - t0) << " s  (" << result.size()
                      << " motifs)\n";
        }
    }
    return 0;
}
