// pms8 - exact (l,d) planted motif search
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pms8/instance.hpp"
#include "pms8/io.hpp"
#include "pms8/oracle.hpp"
#include "pms8/parallel.hpp"
#include "pms8/solver.hpp"

namespace {

using nlohmann::json;

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

json report_to_json(const pms8::RunReport& r) {
    return json{
        {"n", r.n},
        {"m", r.m},
        {"l", r.l},
        {"d", r.d},
        {"alphabet", r.alphabet},
        {"threshold", r.threshold},
        {"workers", r.workers},
        {"subproblems", r.subproblems},
        {"motif_count", r.motif_count},
        {"wall_seconds", r.wall_seconds},
        {"sample_seconds", r.sample_seconds},
        {"pattern_seconds", r.pattern_seconds},
        {"memory",
         {{"pair_matrix_words", r.memory.pair_matrix_words},
          {"row_matrix_words", r.memory.row_matrix_words},
          {"row_bookkeeping_words", r.memory.row_bookkeeping_words},
          {"packed_words", r.memory.packed_words},
          {"lookup_table_words", r.memory.lookup_table_words},
          {"tracked_total_words", r.memory.tracked_total_words()},
          {"tracked_total_bytes", r.memory.tracked_total_words() * 8}}},
        {"counters",
         {{"stacks_explored", r.counters.stacks_explored},
          {"neighborhoods", r.counters.neighborhoods},
          {"neighbors_visited", r.counters.neighbors_visited},
          {"motifs_emitted", r.counters.motifs_emitted}}},
        {"command", r.command},
    };
}

struct GenerateArgs {
    int l = 0, d = 0, n = 20, m = 600;
    std::string alphabet = "dna";
    uint64_t seed = 0;
    std::string mutation = "atmost";
    std::string output = "instance.fa";
};

int cmd_generate(const GenerateArgs& a) {
    pms8::PlantedInstanceSpec spec;
    spec.l = a.l;
    spec.d = a.d;
    spec.n = a.n;
    spec.m = a.m;
    spec.alphabet = pms8::Alphabet::named(a.alphabet);
    spec.seed = a.seed;
    spec.mutation = a.mutation == "exact" ? pms8::MutationMode::exactly_d
                                          : pms8::MutationMode::at_most_d;
    const pms8::PlantedInstance inst = pms8::generate_planted_instance(spec);

    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("format", "pms8-planted-instance-v1");
    meta.emplace_back("n", std::to_string(a.n));
    meta.emplace_back("m", std::to_string(a.m));
    meta.emplace_back("l", std::to_string(a.l));
    meta.emplace_back("d", std::to_string(a.d));
    meta.emplace_back("alphabet", spec.alphabet.name());
    meta.emplace_back("seed", std::to_string(a.seed));
    meta.emplace_back("mutation", a.mutation == "exact" ? "exact" : "atmost");
    meta.emplace_back("motif", inst.motif);
    std::string positions;
    for (size_t i = 0; i < inst.positions.size(); ++i) {
        if (i) positions += ',';
        positions += std::to_string(inst.positions[i]);
    }
    meta.emplace_back("positions", positions);

    std::vector<std::string> names;
    names.reserve(inst.problem.sequences.size());
    for (size_t i = 0; i < inst.problem.sequences.size(); ++i)
        names.push_back("seq_" + std::to_string(i) + " pos=" + std::to_string(inst.positions[i]));
    pms8::write_fasta(a.output, names, inst.problem.sequences, meta);

    std::cout << inst.motif << "\n";
    std::cerr << "wrote " << a.output << " (" << a.n << " sequences of length " << a.m << ")\n";
    return 0;
}

struct SolveArgs {
    std::string input;
    std::optional<int> l, d;
    std::optional<int> workers, threshold;
    std::optional<int64_t> max_motifs;
    std::string alphabet;  // empty: take from file metadata, then dna
    std::string format = "text";
    std::string prune = "full";
    bool no_sort_rows = false;
    bool no_pair_matrix = false;
    bool reverify = false;
    std::string command;
};

int solve_args_to_problem(const SolveArgs& a, pms8::Problem& problem) {
    const pms8::SequenceFile file = pms8::read_sequences(a.input);
    auto meta_int = [&](const char* key) -> std::optional<int> {
        auto it = file.metadata.find(key);
        if (it == file.metadata.end()) return std::nullopt;
        return std::stoi(it->second);
    };
    const std::optional<int> l = a.l ? a.l : meta_int("l");
    const std::optional<int> d = a.d ? a.d : meta_int("d");
    if (!l || !d) {
        std::cerr << "error: -l and -d are required (no l/d metadata in " << a.input << ")\n";
        return 2;
    }
    std::string alphabet = a.alphabet;
    if (alphabet.empty()) {
        auto it = file.metadata.find("alphabet");
        alphabet = it != file.metadata.end() ? it->second : "dna";
    }
    problem.sequences = file.sequences;
    problem.motif_length = *l;
    problem.max_mismatches = *d;
    problem.alphabet = pms8::Alphabet::named(alphabet);
    problem.validate();
    return 0;
}

int cmd_solve(const SolveArgs& a) {
    pms8::Problem problem;
    if (int rc = solve_args_to_problem(a, problem); rc != 0) return rc;

    pms8::SolverConfig config;
    config.threshold_override = a.threshold;
    config.sort_rows = !a.no_sort_rows;
    config.use_pair_matrix = !a.no_pair_matrix;
    config.max_motifs = a.max_motifs;
    config.reverify_against_originals = a.reverify;
    if (a.prune == "none") config.prune_level = pms8::PruneLevel::none;
    else if (a.prune == "pairs") config.prune_level = pms8::PruneLevel::pairs;
    else config.prune_level = pms8::PruneLevel::full;

    pms8::ParallelOptions par;
    par.workers = pms8::resolve_worker_count(a.workers);

    pms8::RunReport report;
    const pms8::MotifSet motifs = pms8::run_parallel(problem, config, par, &report);
    report.command = a.command;

    if (a.format == "json") {
        json out;
        out["motifs"] = motifs;
        out["report"] = report_to_json(report);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& m : motifs) std::cout << m << "\n";
        std::cerr << "motifs=" << motifs.size() << " threshold=" << report.threshold
                  << " workers=" << report.workers << " wall=" << report.wall_seconds << "s"
                  << " sample=" << report.sample_seconds << "s pattern=" << report.pattern_seconds
                  << "s\n";
    }
    return motifs.empty() ? 1 : 0;
}

struct VerifyArgs {
    std::string input;
    std::string motifs_path;
    std::optional<int> l, d;
    std::string alphabet;
};

int cmd_verify(const VerifyArgs& a) {
    pms8::SequenceFile file = pms8::read_sequences(a.input);
    auto meta_int = [&](const char* key) -> std::optional<int> {
        auto it = file.metadata.find(key);
        if (it == file.metadata.end()) return std::nullopt;
        return std::stoi(it->second);
    };
    const std::optional<int> l = a.l ? a.l : meta_int("l");
    const std::optional<int> d = a.d ? a.d : meta_int("d");
    if (!l || !d) {
        std::cerr << "error: -l and -d are required (no l/d metadata in " << a.input << ")\n";
        return 2;
    }
    std::string alphabet = a.alphabet;
    if (alphabet.empty()) {
        auto it = file.metadata.find("alphabet");
        alphabet = it != file.metadata.end() ? it->second : "dna";
    }

    pms8::Problem problem;
    problem.sequences = file.sequences;
    problem.motif_length = *l;
    problem.max_mismatches = *d;
    problem.alphabet = pms8::Alphabet::named(alphabet);
    problem.validate();

    const pms8::SequenceFile motif_file = pms8::read_plain(a.motifs_path);
    bool all_pass = true;
    for (const std::string& motif : motif_file.sequences) {
        if (static_cast<int>(motif.size()) != *l) {
            std::cerr << "error: motif " << motif << " has length " << motif.size()
                      << ", expected l=" << *l << "\n";
            return 2;
        }
        for (char c : motif)
            if (!problem.alphabet.contains(c)) {
                std::cerr << "error: motif " << motif << " contains symbol '" << c
                          << "' outside alphabet " << problem.alphabet.name() << "\n";
                return 2;
            }
        std::vector<int> offsets;
        if (pms8::naive_is_motif(problem, motif, &offsets)) {
            std::cout << motif << "\tPASS\t";
            for (size_t i = 0; i < offsets.size(); ++i) {
                if (i) std::cout << ',';
                std::cout << offsets[i];
            }
            std::cout << "\n";
        } else {
            std::cout << motif << "\tFAIL\n";
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}

struct ModelArgs {
    int l = 0;
    std::optional<int> d;
    int n = 20, m = 600;
    std::string alphabet = "dna";
    double cap = 500.0;
    std::string format = "text";
};

int cmd_model(const ModelArgs& a) {
    const pms8::Alphabet alphabet = pms8::Alphabet::named(a.alphabet);
    const int sigma = alphabet.size();
    const int d = a.d.value_or(pms8::smallest_challenging_d(a.l, a.n, a.m, sigma));

    const pms8::SpuriousModel model = pms8::spurious_model(a.n, a.m, a.l, d, sigma);
    const pms8::BigCount n2d = pms8::neighborhood_size(a.l, std::min(2 * d, a.l), sigma);
    const int challenging_d = pms8::smallest_challenging_d(a.l, a.n, a.m, sigma);
    const int threshold = pms8::estimate_threshold(a.n, a.m, a.l, d, sigma);
    const auto curve = pms8::threshold_curve(a.n, a.m, a.l, d, sigma);
    constexpr double ln10 = 2.302585092994046;

    if (a.format == "json") {
        json out{
            {"n", a.n},
            {"m", a.m},
            {"l", a.l},
            {"d", d},
            {"alphabet", alphabet.name()},
            {"neighborhood_size", model.neighborhood.str()},
            {"neighborhood_size_2d", n2d.str()},
            {"per_lmer_probability", model.per_lmer_probability},
            {"per_string_probability", model.per_string_probability},
            {"expected_spurious_motifs", model.expectation},
            {"challenging", model.expectation >= 1.0},
            {"challenging_d", challenging_d},
            {"excluded_by_cap", model.expectation > a.cap},
            {"cap", a.cap},
            {"threshold", threshold},
        };
        out["curve"] = json::array();
        for (const auto& pt : curve)
            out["curve"].push_back({{"t", pt.t},
                                    {"log10_time_sample", pt.log_time_sample / ln10},
                                    {"log10_time_pattern", pt.log_time_pattern / ln10}});
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << "n=" << a.n << " m=" << a.m << " l=" << a.l << " d=" << d
              << " alphabet=" << alphabet.name() << "\n";
    std::cout << "N_d  = " << model.neighborhood.str() << "\n";
    std::cout << "N_2d = " << n2d.str() << "\n";
    std::cout << "p (per l-mer)  = " << model.per_lmer_probability << "\n";
    std::cout << "q (per string) = " << model.per_string_probability << "\n";
    std::cout << "E (expected chance motifs) = " << model.expectation << "\n";
    std::cout << "challenging = " << (model.expectation >= 1.0 ? "yes" : "no") << "\n";
    std::cout << "challenging_d(l=" << a.l << ") = " << challenging_d << "\n";
    std::cout << "excluded by cap " << a.cap << " = " << (model.expectation > a.cap ? "yes" : "no")
              << "\n";
    std::cout << "threshold t = " << threshold << "\n";
    std::cout << "t\tlog10_time_sample\tlog10_time_pattern\n";
    for (const auto& pt : curve)
        std::cout << pt.t << "\t" << pt.log_time_sample / ln10 << "\t" << pt.log_time_pattern / ln10
                  << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pms8: exact (l,d) planted motif search"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "generate a planted (l,d) instance");
    g->add_option("-l", gen.l, "motif length")->required();
    g->add_option("-d", gen.d, "mismatch budget")->required();
    g->add_option("-n", gen.n, "number of sequences");
    g->add_option("-m", gen.m, "sequence length");
    g->add_option("--alphabet", gen.alphabet, "dna, protein or custom:<symbols>");
    g->add_option("--seed", gen.seed, "RNG seed");
    g->add_option("--mutation", gen.mutation, "atmost or exact")
        ->check(CLI::IsMember({"atmost", "exact"}));
    g->add_option("-o,--output", gen.output, "output FASTA path");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "find all (l,d) motifs of an instance");
    s->add_option("input", sol.input, "FASTA or plain-text sequence file")->required();
    s->add_option("-l", sol.l, "motif length (default: file metadata)");
    s->add_option("-d", sol.d, "mismatch budget (default: file metadata)");
    s->add_option("--alphabet", sol.alphabet, "dna, protein or custom:<symbols>");
    s->add_option("--workers", sol.workers, "worker count (default: WORKER_COUNT env, then cores)");
    s->add_option("--threshold", sol.threshold, "stack size that switches to enumeration");
    s->add_option("--max-motifs", sol.max_motifs, "abort after this many motif emissions");
    s->add_option("--format", sol.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--prune", sol.prune, "enumeration pruning: none, pairs or full")
        ->check(CLI::IsMember({"none", "pairs", "full"}));
    s->add_flag("--no-sort-rows", sol.no_sort_rows, "disable row reordering by size");
    s->add_flag("--no-pair-matrix", sol.no_pair_matrix, "disable the precomputed pair bits");
    s->add_flag("--reverify", sol.reverify, "re-check every motif against the unfiltered rows");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "check candidate motifs with the brute-force scanner");
    v->add_option("input", ver.input, "FASTA or plain-text sequence file")->required();
    v->add_option("-M,--motifs", ver.motifs_path, "file with one candidate motif per line")
        ->required();
    v->add_option("-l", ver.l, "motif length (default: file metadata)");
    v->add_option("-d", ver.d, "mismatch budget (default: file metadata)");
    v->add_option("--alphabet", ver.alphabet, "dna, protein or custom:<symbols>");

    ModelArgs mod;
    auto* mo = app.add_subcommand("model", "chance-motif expectation and threshold curves");
    mo->add_option("-l", mod.l, "motif length")->required();
    mo->add_option("-d", mod.d, "mismatch budget (default: challenging d for l)");
    mo->add_option("-n", mod.n, "number of sequences");
    mo->add_option("-m", mod.m, "sequence length");
    mo->add_option("--alphabet", mod.alphabet, "dna, protein or custom:<symbols>");
    mo->add_option("--cap", mod.cap, "spurious-motif exclusion cap");
    mo->add_option("--format", mod.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (g->parsed()) return cmd_generate(gen);
        if (s->parsed()) {
            sol.command = join_args(argc, argv);
            return cmd_solve(sol);
        }
        if (v->parsed()) return cmd_verify(ver);
        if (mo->parsed()) return cmd_model(mod);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
