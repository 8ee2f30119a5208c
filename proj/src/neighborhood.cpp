#include "pms8/neighborhood.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pms8 {

bool prune_node(std::span<const std::string_view> suffixes, std::span<const int> remaining,
                PruneLevel level) {
    const int k = static_cast<int>(suffixes.size());
    if (k == 0) throw std::invalid_argument("empty tuple");
    if (suffixes.size() != remaining.size())
        throw std::invalid_argument("budget count does not match tuple size");
    if (level == PruneLevel::none) return false;

    for (int r : remaining)
        if (r < 0) return true;

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int dist = 0;
            for (size_t c = 0; c < suffixes[0].size(); ++c)
                dist += suffixes[static_cast<size_t>(i)][c] != suffixes[static_cast<size_t>(j)][c];
            if (dist > remaining[static_cast<size_t>(i)] + remaining[static_cast<size_t>(j)])
                return true;
        }
    if (level == PruneLevel::pairs) return false;

    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int h = j + 1; h < k; ++h) {
                const Budgets b{remaining[static_cast<size_t>(i)], remaining[static_cast<size_t>(j)],
                                remaining[static_cast<size_t>(h)]};
                if (!triple_common_neighbor_exists(suffixes[static_cast<size_t>(i)],
                                                   suffixes[static_cast<size_t>(j)],
                                                   suffixes[static_cast<size_t>(h)], b))
                    return true;
            }

    int total = 0;
    for (int r : remaining) total += r;
    return consensus_total_distance(suffixes) > total;
}

NeighborhoodEnumerator::NeighborhoodEnumerator(int sigma, int max_length) : sigma_(sigma) {
    candidate_.resize(static_cast<size_t>(max_length));
}

void NeighborhoodEnumerator::prepare(const uint8_t* tuple, int k, int l,
                                     std::span<const int> budgets, PruneLevel level) {
    if (k < 1) throw std::invalid_argument("empty tuple");
    if (static_cast<int>(budgets.size()) != k)
        throw std::invalid_argument("budget count does not match tuple size");
    k_ = k;
    l_ = l;
    level_ = level;
    codes_.assign(tuple, tuple + static_cast<size_t>(k) * l);
    if (candidate_.size() < static_cast<size_t>(l)) candidate_.resize(static_cast<size_t>(l));
    budget_.assign(budgets.begin(), budgets.end());

    pairs_.clear();
    std::vector<std::vector<int>> pair_idx(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), -1));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            pair_idx[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<int>(pairs_.size());
            pairs_.push_back({i, j});
        }
    triples_.clear();
    triples_of_.assign(static_cast<size_t>(k), {});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int h = j + 1; h < k; ++h) {
                const int idx = static_cast<int>(triples_.size());
                triples_.push_back({i, j, h, pair_idx[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                    pair_idx[static_cast<size_t>(i)][static_cast<size_t>(h)],
                                    pair_idx[static_cast<size_t>(j)][static_cast<size_t>(h)]});
                triples_of_[static_cast<size_t>(i)].push_back(idx);
                triples_of_[static_cast<size_t>(j)].push_back(idx);
                triples_of_[static_cast<size_t>(h)].push_back(idx);
            }

    const size_t np = pairs_.size(), nt = triples_.size();
    pair_suffix_.assign((static_cast<size_t>(l) + 1) * np, 0);
    triple_suffix_n4_.assign((static_cast<size_t>(l) + 1) * nt, 0);
    consensus_suffix_.assign(static_cast<size_t>(l) + 1, 0);

    std::array<int, 256> freq{};
    for (int p = l - 1; p >= 0; --p) {
        const auto row = static_cast<size_t>(p);
        for (size_t e = 0; e < np; ++e)
            pair_suffix_[row * np + e] =
                pair_suffix_[(row + 1) * np + e] +
                (codes_[static_cast<size_t>(pairs_[e].i) * l + p] !=
                 codes_[static_cast<size_t>(pairs_[e].j) * l + p]);
        for (size_t e = 0; e < nt; ++e) {
            const Triple& tr = triples_[e];
            const uint8_t a = codes_[static_cast<size_t>(tr.i) * l + p];
            const uint8_t b = codes_[static_cast<size_t>(tr.j) * l + p];
            const uint8_t c = codes_[static_cast<size_t>(tr.h) * l + p];
            triple_suffix_n4_[row * nt + e] =
                triple_suffix_n4_[(row + 1) * nt + e] + (a != b && a != c && b != c);
        }
        int best = 0;
        for (int i = 0; i < k; ++i) {
            const uint8_t c = codes_[static_cast<size_t>(i) * l + p];
            best = std::max(best, ++freq[c]);
        }
        consensus_suffix_[row] = consensus_suffix_[row + 1] + (k - best);
        for (int i = 0; i < k; ++i) freq[codes_[static_cast<size_t>(i) * l + p]] = 0;
    }
}

bool NeighborhoodEnumerator::prune(int p, int rep) const {
    for (int i = 0; i < k_; ++i)
        if (budget_[static_cast<size_t>(i)] < 0) return true;

    const size_t row = static_cast<size_t>(p);
    const size_t np = pairs_.size();
    for (size_t e = 0; e < np; ++e)
        if (pair_suffix_[row * np + e] >
            budget_[static_cast<size_t>(pairs_[e].i)] + budget_[static_cast<size_t>(pairs_[e].j)])
            return true;
    if (level_ == PruneLevel::pairs) return false;

    if (k_ >= 3) {
        const size_t nt = triples_.size();
        // Cd of a 3-suffix via the identity Cd3 = (h_ij + h_ih + h_jh + n4) / 2
        auto violates = [&](int idx) {
            const Triple& t = triples_[static_cast<size_t>(idx)];
            const int cd3 = (pair_suffix_[row * np + static_cast<size_t>(t.pij)] +
                             pair_suffix_[row * np + static_cast<size_t>(t.pih)] +
                             pair_suffix_[row * np + static_cast<size_t>(t.pjh)] +
                             triple_suffix_n4_[row * nt + static_cast<size_t>(idx)]) / 2;
            return cd3 > budget_[static_cast<size_t>(t.i)] + budget_[static_cast<size_t>(t.j)] +
                             budget_[static_cast<size_t>(t.h)];
        };
        if (k_ == 3 || rep < 0) {
            for (size_t e = 0; e < nt; ++e)
                if (violates(static_cast<int>(e))) return true;
        } else {
            // limiting to triples that contain the member constrained on this
            // edge keeps the node cost at O(k^2); the others held at the
            // parent and suffix quantities only shrink with depth
            for (int idx : triples_of_[static_cast<size_t>(rep)])
                if (violates(idx)) return true;
        }
    }

    if (k_ >= 2) {
        int total = 0;
        for (int r : budget_) total += r;
        if (consensus_suffix_[row] > total) return true;
    }
    return false;
}

int64_t generate_common_neighborhood(std::span<const std::string> tuple, int d,
                                     const Alphabet& alphabet,
                                     const std::function<void(std::string_view)>& visit,
                                     PruneLevel level) {
    if (tuple.empty()) throw std::invalid_argument("empty tuple");
    if (d < 0) throw std::invalid_argument("negative budget");
    const int l = static_cast<int>(tuple[0].size());
    std::vector<uint8_t> codes(tuple.size() * static_cast<size_t>(l));
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (static_cast<int>(tuple[i].size()) != l)
            throw std::invalid_argument("tuple l-mers have mixed lengths");
        for (int p = 0; p < l; ++p)
            codes[i * static_cast<size_t>(l) + static_cast<size_t>(p)] = alphabet.code(tuple[i][static_cast<size_t>(p)]);
    }
    const std::vector<int> budgets(tuple.size(), d);
    NeighborhoodEnumerator en(alphabet.size(), l);
    en.prepare(codes.data(), static_cast<int>(tuple.size()), l, budgets, level);
    std::string buf(static_cast<size_t>(l), '\0');
    return en.enumerate([&](const uint8_t* c, int len) {
        for (int p = 0; p < len; ++p) buf[static_cast<size_t>(p)] = alphabet.symbol(c[p]);
        visit(buf);
    });
}

}  // namespace pms8
