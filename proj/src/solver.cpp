#include "pms8/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pms8/instance.hpp"

namespace pms8 {

MotifSet canonical_motif_set(std::vector<std::string> motifs) {
    std::sort(motifs.begin(), motifs.end());
    motifs.erase(std::unique(motifs.begin(), motifs.end()), motifs.end());
    motifs.shrink_to_fit();
    return motifs;
}

// --- pair-compatibility matrix ----------------------------------------------

PairCompatibilityMatrix::PairCompatibilityMatrix(const PackedSequenceSet& set,
                                                 const GroupPopcountTable& table, int d) {
    k_ = static_cast<uint64_t>(set.total_lmers());
    const uint64_t words = (k_ * k_ + 63) / 64;
    try {
        bits_.assign(words, 0);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("cannot allocate pair-compatibility matrix: " +
                                 std::to_string(words * 8 / (1 << 20)) + " MiB for " +
                                 std::to_string(k_) + " l-mers");
    }
    const int cap = 2 * d;
    if (cap >= set.motif_length()) {
        std::fill(bits_.begin(), bits_.end(), ~uint64_t{0});
        return;
    }
    (void)table;
    auto set_bit = [&](uint64_t u, uint64_t v) {
        const uint64_t bit = u * k_ + v;
        bits_[bit >> 6] |= uint64_t{1} << (bit & 63);
    };
    const int n = set.count();
    const int width = set.windows_per_seq();
    for (int s1 = 0; s1 < n; ++s1)
        for (int o1 = 0; o1 < width; ++o1) {
            const uint32_t u = set.lmer_id(static_cast<uint32_t>(s1), static_cast<uint32_t>(o1));
            const LmerRef ur{static_cast<uint32_t>(s1), static_cast<uint32_t>(o1)};
            set_bit(u, u);
            for (int s2 = s1; s2 < n; ++s2)
                for (int o2 = (s2 == s1 ? o1 + 1 : 0); o2 < width; ++o2) {
                    const uint32_t v = set.lmer_id(static_cast<uint32_t>(s2), static_cast<uint32_t>(o2));
                    if (hamming64_unchecked(set, ur,
                                            LmerRef{static_cast<uint32_t>(s2), static_cast<uint32_t>(o2)}) <= cap) {
                        set_bit(u, v);
                        set_bit(v, u);
                    }
                }
        }
}

// --- threshold model ---------------------------------------------------------

namespace {

double log_big(const BigCount& v) {
    return static_cast<double>(boost::multiprecision::log(boost::multiprecision::cpp_bin_float_50(v)));
}

}  // namespace

std::vector<ThresholdCurvePoint> threshold_curve(int n, int m, int l, int d, int sigma) {
    std::vector<ThresholdCurvePoint> out;
    if (n < 2 || m <= l) return out;
    const double log_nd = log_big(neighborhood_size(l, d, sigma));
    const double log_n2d = log_big(neighborhood_size(l, std::min(2 * d, l), sigma));
    const double log_p = log_n2d - l * std::log(static_cast<double>(sigma));
    const double log_q = log_nd - log_n2d;
    const double log_w = std::log(static_cast<double>(m - l + 1));

    std::vector<double> terms;  // log T_k = k log(m-l+1) + C(k,2) log p
    terms.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k)
        terms.push_back(k * log_w + 0.5 * k * (k - 1) * log_p);

    for (int t = 2; t <= n; ++t) {
        const double mx = *std::max_element(terms.begin(), terms.begin() + t);
        double sum = 0;
        for (int k = 0; k < t; ++k) sum += std::exp(terms[static_cast<size_t>(k)] - mx);
        ThresholdCurvePoint pt;
        pt.t = t;
        pt.log_time_sample = std::log(static_cast<double>(n)) + std::log(static_cast<double>(l)) +
                             mx + std::log(sum);
        pt.log_time_pattern = terms[static_cast<size_t>(t - 1)] + log_nd + (t - 1) * log_q +
                              std::log(static_cast<double>(l));
        out.push_back(pt);
    }
    return out;
}

int estimate_threshold(int n, int m, int l, int d, int sigma) {
    if (n < 2) return n;
    if (m == l) return n;  // single stack, no branching: ride it to the bottom
    int best_t = 2;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pt : threshold_curve(n, m, l, d, sigma)) {
        const double v = std::max(pt.log_time_sample, pt.log_time_pattern);
        if (v < best - 1e-12) {
            best = v;
            best_t = pt.t;
        }
    }
    return best_t;
}

// --- solver context ----------------------------------------------------------

namespace {

const Problem& validated(const Problem& p) {
    p.validate();
    return p;
}

}  // namespace

SolverContext::SolverContext(const Problem& problem, const SolverConfig& config)
    : problem_(validated(problem)),
      config_(config),
      set_(problem.sequences, problem.alphabet, problem.motif_length),
      table_(problem.alphabet.bits_per_symbol()) {
    if (config_.threshold_override) {
        const int t = *config_.threshold_override;
        if (t < 1 || t > problem_.n())
            throw std::invalid_argument("threshold must be in [1, n], got " + std::to_string(t));
        threshold_ = t;
    } else {
        threshold_ = estimate_threshold(problem_.n(), problem_.m(), problem_.motif_length,
                                        problem_.max_mismatches, problem_.alphabet.size());
    }
    if (config_.use_pair_matrix)
        pairs_ = std::make_unique<PairCompatibilityMatrix>(set_, table_, problem_.max_mismatches);
}

MemoryBreakdown SolverContext::memory() const {
    MemoryBreakdown mem;
    mem.pair_matrix_words = pairs_ ? pairs_->words() : 0;
    mem.packed_words = set_.packed_words();
    mem.lookup_table_words = GroupPopcountTable::table_words();
    return mem;
}

// --- row matrix ----------------------------------------------------------------

RowMatrix::RowMatrix(const PackedSequenceSet& set)
    : n_(set.count()), width_(static_cast<size_t>(set.windows_per_seq())) {
    storage_.resize(static_cast<size_t>(n_) * width_);
    live_.resize(static_cast<size_t>(n_));
    order_.resize(static_cast<size_t>(n_));
    frame_store_.resize(static_cast<size_t>(n_ + 1) * 2 * static_cast<size_t>(n_));
    reset_full();
}

void RowMatrix::reset_full() {
    for (int r = 0; r < n_; ++r) {
        for (size_t j = 0; j < width_; ++j)
            storage_[static_cast<size_t>(r) * width_ + j] =
                static_cast<uint32_t>(static_cast<size_t>(r) * width_ + j);
        live_[static_cast<size_t>(r)] = static_cast<int>(width_);
        order_[static_cast<size_t>(r)] = r;
    }
    frame_count_ = 0;
}

int RowMatrix::position_of_row(int row) const {
    for (int pos = 0; pos < n_; ++pos)
        if (order_[static_cast<size_t>(pos)] == row) return pos;
    return -1;
}

void RowMatrix::restrict_row(int row, uint32_t lmer_id) {
    storage_[static_cast<size_t>(row) * width_] = lmer_id;
    live_[static_cast<size_t>(row)] = 1;
}

void RowMatrix::push_frame(int) {
    if (frame_count_ >= static_cast<size_t>(n_ + 1)) throw std::logic_error("frame stack overflow");
    int* f = frame_store_.data() + frame_count_ * 2 * static_cast<size_t>(n_);
    std::copy(live_.begin(), live_.end(), f);
    std::copy(order_.begin(), order_.end(), f + n_);
    ++frame_count_;
}

void RowMatrix::pop_frame() {
    if (frame_count_ == 0) throw std::logic_error("frame stack underflow");
    --frame_count_;
    const int* f = frame_store_.data() + frame_count_ * 2 * static_cast<size_t>(n_);
    std::copy(f, f + n_, live_.begin());
    std::copy(f + n_, f + 2 * n_, order_.begin());
}

void RowMatrix::sort_rows_by_size(int from_position) {
    // insertion sort: stable, allocation-free, and the range is tiny (< n)
    for (int i = from_position + 1; i < n_; ++i) {
        const int row = order_[static_cast<size_t>(i)];
        const int size = live_[static_cast<size_t>(row)];
        int j = i - 1;
        while (j >= from_position && live_[static_cast<size_t>(order_[static_cast<size_t>(j)])] > size) {
            order_[static_cast<size_t>(j + 1)] = order_[static_cast<size_t>(j)];
            --j;
        }
        order_[static_cast<size_t>(j + 1)] = row;
    }
}

uint64_t RowMatrix::row_words() const { return (storage_.size() * 4 + 7) / 8; }

uint64_t RowMatrix::bookkeeping_words() const {
    return ((live_.size() + order_.size() + frame_store_.size()) * 4 + 7) / 8;
}

// --- sample-driven search -------------------------------------------------------

MotifSearch::MotifSearch(const SolverContext& ctx)
    : ctx_(ctx), rows_(ctx.set()), enumerator_(ctx.set().alphabet().size(), ctx.set().motif_length()) {
    const auto& set = ctx_.set();
    const int t = ctx_.threshold();
    snapshot_.resize(static_cast<size_t>(t));
    dist_to_stack_.assign(static_cast<size_t>(t) * static_cast<size_t>(set.total_lmers()), 0);
    stack_chunks_.assign(static_cast<size_t>(t), {});
    stack_top_fold_.assign(static_cast<size_t>(t), {});
    stack_pair_dist_.assign(static_cast<size_t>(t), 0);
    tuple_codes_.resize(static_cast<size_t>(t) * static_cast<size_t>(set.motif_length()));
    stack_.reserve(static_cast<size_t>(t));
}

void MotifSearch::reset() {
    rows_.reset_full();
    stack_.clear();
}

bool MotifSearch::push(uint32_t lmer_id) {
    const auto& set = ctx_.set();
    const auto* pairs = ctx_.pairs();
    const int d = ctx_.d();
    const int p = depth();
    const int n = set.count();
    const int bits = set.alphabet().bits_per_symbol();
    const int spw = set.symbols_per_word64();
    const int chunks = set.chunks64();
    const uint64_t lsb = set.group_lsb64();
    const int l = set.motif_length();
    const auto width = static_cast<size_t>(set.windows_per_seq());
    const int64_t total = set.total_lmers();

    rows_.push_frame(p);
    stack_.push_back(lmer_id);
    ++counters_.stacks_explored;

    const LmerRef top = set.ref_of(lmer_id);
    auto& topchunk = stack_chunks_[static_cast<size_t>(p)];
    for (int w = 0, pos = 0; w < chunks; ++w, pos += spw)
        topchunk[static_cast<size_t>(w)] = set.window64(top.seq, top.offset + static_cast<uint32_t>(pos)) &
                                           set.chunk_mask(std::min(spw, l - pos));
    // per stack member: distance to the new top and folded mismatch masks
    for (int i = 0; i < p; ++i) {
        stack_pair_dist_[static_cast<size_t>(i)] =
            hamming64_unchecked(set, set.ref_of(stack_[static_cast<size_t>(i)]), top);
        auto& fsu = stack_top_fold_[static_cast<size_t>(i)];
        const auto& sichunk = stack_chunks_[static_cast<size_t>(i)];
        for (int w = 0; w < chunks; ++w)
            fsu[static_cast<size_t>(w)] =
                nonzero_groups64(sichunk[static_cast<size_t>(w)] ^ topchunk[static_cast<size_t>(w)], bits, lsb);
    }

    uint64_t vchunk[32];
    uint64_t fvu[32];  // folded mismatch mask of v vs top, shared across triples
    bool viable = true;
    for (int q = p; q < n; ++q) {
        const int row = rows_.row_at_position(q);
        uint32_t* ids = rows_.mutable_row(row);
        const int count = rows_.live_count(row);
        const size_t base = static_cast<size_t>(row) * width;
        int kept = 0;
        for (int s = 0; s < count; ++s) {
            const uint32_t v = ids[s];
            // fixed first index keeps the bit scan inside one matrix row
            if (pairs && !pairs->compatible(lmer_id, v)) continue;
            const LmerRef vr = set.ref_of(v);
            int hvu = 0;
            for (int w = 0, pos = 0; w < chunks; ++w, pos += spw) {
                vchunk[w] = set.window64(vr.seq, vr.offset + static_cast<uint32_t>(pos)) &
                            set.chunk_mask(std::min(spw, l - pos));
                fvu[w] = nonzero_groups64(vchunk[w] ^ topchunk[static_cast<size_t>(w)], bits, lsb);
                hvu += std::popcount(fvu[w]);
            }
            if (!pairs && hvu > 2 * d) continue;

            bool ok = true;
            for (int i = 0; i < p && ok; ++i) {
                const int hsu = stack_pair_dist_[static_cast<size_t>(i)];
                const int hvi = dist_to_stack_[static_cast<size_t>(i) * total + base + static_cast<size_t>(s)];
                const int sum = hvi + hvu + hsu;
                if (sum > 6 * d) {
                    ok = false;
                } else if (sum + std::min({hvi, hvu, hsu}) > 6 * d) {
                    // bounds undecided: count all-distinct columns exactly
                    const auto& sichunk = stack_chunks_[static_cast<size_t>(i)];
                    const auto& fsu = stack_top_fold_[static_cast<size_t>(i)];
                    int n4 = 0;
                    for (int w = 0; w < chunks; ++w)
                        n4 += std::popcount(nonzero_groups64(vchunk[w] ^ sichunk[static_cast<size_t>(w)], bits, lsb) &
                                            fvu[w] & fsu[static_cast<size_t>(w)]);
                    ok = sum + n4 <= 6 * d;
                }
            }
            if (!ok) continue;

            std::swap(ids[kept], ids[s]);
            for (int i = 0; i < p; ++i)
                std::swap(dist_to_stack_[static_cast<size_t>(i) * total + base + static_cast<size_t>(kept)],
                          dist_to_stack_[static_cast<size_t>(i) * total + base + static_cast<size_t>(s)]);
            dist_to_stack_[static_cast<size_t>(p) * total + base + static_cast<size_t>(kept)] =
                static_cast<uint16_t>(hvu);
            ++kept;
        }
        rows_.set_live(row, kept);
        if (kept == 0 && q > p) {
            viable = false;
            break;
        }
    }
    return viable;
}

void MotifSearch::pop() {
    rows_.pop_frame();
    stack_.pop_back();
}

bool MotifSearch::verify_candidate(const uint8_t* codes, std::span<const int>) {
    const auto& set = ctx_.set();
    const int d = ctx_.d();
    const int n = set.count();
    PackedChunks cand;
    pack_candidate64(set, codes, cand);
    for (int q = depth(); q < n; ++q) {
        const int row = rows_.row_at_position(q);
        bool hit = false;
        for (const uint32_t v : rows_.live(row)) {
            if (hamming64_cand(set, cand, set.ref_of(v)) <= d) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

void MotifSearch::emit(const uint8_t* codes, std::vector<std::string>& out) {
    const auto& set = ctx_.set();
    std::string motif = set.alphabet().decode(codes, set.motif_length());
    if (ctx_.config().reverify_against_originals) {
        PackedChunks cand;
        pack_candidate64(set, codes, cand);
        for (int r = 0; r < set.count(); ++r) {
            bool hit = false;
            for (int off = 0; off < set.windows_per_seq() && !hit; ++off)
                hit = hamming64_cand(set, cand,
                                     LmerRef{static_cast<uint32_t>(r), static_cast<uint32_t>(off)}) <= ctx_.d();
            if (!hit)
                throw std::logic_error("re-verification failed for motif " + motif + " in sequence " +
                                       std::to_string(r));
        }
    }
    out.push_back(std::move(motif));
    ++counters_.motifs_emitted;
    if (ctx_.config().max_motifs && counters_.motifs_emitted > *ctx_.config().max_motifs)
        throw std::runtime_error("motif cap of " + std::to_string(*ctx_.config().max_motifs) +
                                 " exceeded");
}

void MotifSearch::enumerate_and_collect(std::vector<std::string>& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto& set = ctx_.set();
    const int l = set.motif_length();
    const int k = depth();
    for (int i = 0; i < k; ++i) {
        const LmerRef r = set.ref_of(stack_[static_cast<size_t>(i)]);
        std::copy_n(set.codes_row(r.seq) + r.offset, l,
                    tuple_codes_.begin() + static_cast<size_t>(i) * static_cast<size_t>(l));
    }
    budget_scratch_.assign(static_cast<size_t>(k), ctx_.d());
    enumerator_.prepare(tuple_codes_.data(), k, l, budget_scratch_, ctx_.config().prune_level);
    ++counters_.neighborhoods;
    counters_.neighbors_visited += enumerator_.enumerate([&](const uint8_t* codes, int) {
        if (verify_candidate(codes, enumerator_.remaining_budgets())) emit(codes, out);
    });
    pattern_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void MotifSearch::recurse(std::vector<std::string>& out) {
    const int p = depth();
    auto& snap = snapshot_[static_cast<size_t>(p)];
    const auto live = rows_.live(rows_.row_at_position(p));
    snap.assign(live.begin(), live.end());
    for (const uint32_t u : snap) {
        if (push(u)) {
            if (ctx_.config().sort_rows) rows_.sort_rows_by_size(depth());
            if (depth() == ctx_.threshold()) enumerate_and_collect(out);
            else recurse(out);
        }
        pop();
    }
}

void MotifSearch::run(std::vector<std::string>& out) {
    reset();
    if (ctx_.config().sort_rows) rows_.sort_rows_by_size(0);
    recurse(out);
}

void MotifSearch::run_anchored(uint32_t anchor_offset, std::vector<std::string>& out) {
    reset();
    rows_.restrict_row(0, ctx_.set().lmer_id(0, anchor_offset));
    if (ctx_.config().sort_rows) rows_.sort_rows_by_size(0);
    recurse(out);
}

MotifSet solve(const Problem& problem, const SolverConfig& config, RunReport* report) {
    const auto t0 = std::chrono::steady_clock::now();
    SolverContext ctx(problem, config);
    MotifSearch search(ctx);
    std::vector<std::string> raw;
    search.run(raw);
    MotifSet motifs = canonical_motif_set(std::move(raw));
    if (report) {
        report->n = problem.n();
        report->m = problem.m();
        report->l = problem.motif_length;
        report->d = problem.max_mismatches;
        report->alphabet = problem.alphabet.name();
        report->threshold = ctx.threshold();
        report->workers = 1;
        report->subproblems = 1;
        report->motif_count = static_cast<int64_t>(motifs.size());
        report->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report->pattern_seconds = search.pattern_seconds();
        report->sample_seconds = std::max(0.0, report->wall_seconds - report->pattern_seconds);
        report->memory = ctx.memory();
        report->memory.row_matrix_words = search.rows().row_words();
        report->memory.row_bookkeeping_words = search.rows().bookkeeping_words() +
                                               static_cast<uint64_t>(ctx.threshold()) *
                                                   static_cast<uint64_t>(ctx.set().total_lmers()) * 2 / 8;
        report->counters = search.counters();
    }
    return motifs;
}

}  // namespace pms8
