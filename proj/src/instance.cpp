#include "pms8/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pms8 {

uint64_t bounded_draw(std::mt19937_64& rng, uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded_draw with zero bound");
    // rejection sampling keeps the draw unbiased and the stream portable
    const uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
        const uint64_t x = rng();
        if (x >= threshold) return x % bound;
    }
}

PlantedInstance generate_planted_instance(const PlantedInstanceSpec& spec) {
    if (spec.l < 1 || spec.l > spec.m)
        throw std::invalid_argument("need 1 <= l <= m");
    if (spec.d < 0 || spec.d > spec.l)
        throw std::invalid_argument("need 0 <= d <= l");
    if (spec.n < 1) throw std::invalid_argument("need n >= 1");
    if (spec.mutation == MutationMode::exactly_d && spec.alphabet.size() < 2)
        throw std::invalid_argument("exact mutation needs at least 2 symbols");

    std::mt19937_64 rng(spec.seed);
    const int sigma = spec.alphabet.size();
    const auto symbol = [&](uint64_t c) { return spec.alphabet.symbol(static_cast<uint8_t>(c)); };

    std::string motif(static_cast<size_t>(spec.l), '\0');
    for (char& c : motif) c = symbol(bounded_draw(rng, static_cast<uint64_t>(sigma)));

    PlantedInstance out;
    out.motif = motif;
    out.spec = spec;
    out.problem.motif_length = spec.l;
    out.problem.max_mismatches = spec.d;
    out.problem.alphabet = spec.alphabet;
    out.problem.sequences.reserve(static_cast<size_t>(spec.n));

    std::vector<int> columns(static_cast<size_t>(spec.l));
    for (int i = 0; i < spec.n; ++i) {
        std::string seq(static_cast<size_t>(spec.m), '\0');
        for (char& c : seq) c = symbol(bounded_draw(rng, static_cast<uint64_t>(sigma)));

        const int pos = static_cast<int>(bounded_draw(rng, static_cast<uint64_t>(spec.m - spec.l + 1)));
        std::string occurrence = motif;
        // choose d distinct columns via a partial Fisher-Yates shuffle
        std::iota(columns.begin(), columns.end(), 0);
        for (int j = 0; j < spec.d; ++j) {
            const auto pick = j + static_cast<int>(bounded_draw(rng, static_cast<uint64_t>(spec.l - j)));
            std::swap(columns[static_cast<size_t>(j)], columns[static_cast<size_t>(pick)]);
            const auto col = static_cast<size_t>(columns[static_cast<size_t>(j)]);
            if (spec.mutation == MutationMode::at_most_d) {
                occurrence[col] = symbol(bounded_draw(rng, static_cast<uint64_t>(sigma)));
            } else {
                const int old = spec.alphabet.code(occurrence[col]);
                auto c = bounded_draw(rng, static_cast<uint64_t>(sigma - 1));
                if (c >= static_cast<uint64_t>(old)) ++c;
                occurrence[col] = symbol(c);
            }
        }
        seq.replace(static_cast<size_t>(pos), static_cast<size_t>(spec.l), occurrence);
        out.problem.sequences.push_back(std::move(seq));
        out.positions.push_back(pos);
    }
    return out;
}

BigCount neighborhood_size(int l, int d, int sigma) {
    if (l < 0 || d < 0 || d > l) throw std::invalid_argument("need 0 <= d <= l");
    if (sigma < 2) throw std::invalid_argument("alphabet size must be >= 2");
    BigCount total = 0;
    BigCount binom = 1;  // C(l, i)
    BigCount power = 1;  // (sigma-1)^i
    for (int i = 0; i <= d; ++i) {
        total += binom * power;
        binom = binom * (l - i) / (i + 1);
        power *= sigma - 1;
    }
    return total;
}

SpuriousModel spurious_model(int n, int m, int l, int d, int sigma) {
    if (n < 1 || m < l) throw std::invalid_argument("need n >= 1 and m >= l");
    SpuriousModel out;
    out.neighborhood = neighborhood_size(l, d, sigma);
    const double log_nd = static_cast<double>(boost::multiprecision::log(
        boost::multiprecision::cpp_bin_float_50(out.neighborhood)));
    const double log_space = l * std::log(static_cast<double>(sigma));
    const double log_p = log_nd - log_space;
    out.per_lmer_probability = std::exp(log_p);

    // q = 1 - (1-p)^(m-l+1), evaluated as -expm1((m-l+1) * log1p(-p))
    const double windows = static_cast<double>(m - l + 1);
    const double log_one_minus_q = windows * std::log1p(-out.per_lmer_probability);
    out.per_string_probability = -std::expm1(log_one_minus_q);

    out.log_expectation = log_space + n * std::log(out.per_string_probability);
    out.expectation = std::exp(out.log_expectation);
    return out;
}

double expected_spurious_motifs(int n, int m, int l, int d, int sigma) {
    return spurious_model(n, m, l, d, sigma).expectation;
}

namespace {

// expectation with 2(m-l+1) trials per sequence (window + reverse orientation)
double log_expected_both_orientations(int n, int m, int l, int d, int sigma) {
    const double log_nd = static_cast<double>(boost::multiprecision::log(
        boost::multiprecision::cpp_bin_float_50(neighborhood_size(l, d, sigma))));
    const double log_space = l * std::log(static_cast<double>(sigma));
    const double p = std::exp(log_nd - log_space);
    const double q = -std::expm1(2.0 * (m - l + 1) * std::log1p(-p));
    return log_space + n * std::log(q);
}

}  // namespace

int smallest_challenging_d(int l, int n, int m, int sigma) {
    if (l < 1 || m < l) throw std::invalid_argument("need 1 <= l <= m");
    for (int d = 0; d < l; ++d)
        if (log_expected_both_orientations(n, m, l, d, sigma) >= 0.0) return d;
    return l;  // d = l always reaches sigma^l expected motifs
}

std::vector<GridCell> annotate_spurious_grid(std::span<const std::pair<int, int>> grid, double cap,
                                             int n, int m, int sigma) {
    if (cap < 0) throw std::invalid_argument("cap must be >= 0");
    std::vector<GridCell> out;
    out.reserve(grid.size());
    for (const auto& [l, d] : grid) {
        GridCell cell;
        cell.l = l;
        cell.d = d;
        cell.expectation = expected_spurious_motifs(n, m, l, d, sigma);
        cell.excluded = cell.expectation > cap;
        out.push_back(cell);
    }
    return out;
}

}  // namespace pms8
