#include "pms8/pruning.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace pms8 {

namespace {

void require_same_length(std::span<const std::string_view> tuple) {
    if (tuple.empty()) throw std::invalid_argument("empty tuple");
    for (const auto& s : tuple)
        if (s.size() != tuple[0].size())
            throw std::invalid_argument("tuple l-mers have mixed lengths");
}

int naive_distance(std::string_view a, std::string_view b) {
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

int consensus_total_distance(std::span<const std::string_view> tuple) {
    require_same_length(tuple);
    const int k = static_cast<int>(tuple.size());
    const size_t l = tuple[0].size();
    std::array<int, 256> freq{};
    int total = 0;
    for (size_t col = 0; col < l; ++col) {
        int best = 0;
        for (int i = 0; i < k; ++i) {
            const auto c = static_cast<uint8_t>(tuple[static_cast<size_t>(i)][col]);
            best = std::max(best, ++freq[c]);
        }
        total += k - best;
        for (int i = 0; i < k; ++i) freq[static_cast<uint8_t>(tuple[static_cast<size_t>(i)][col])] = 0;
    }
    return total;
}

bool pair_compatible(std::string_view a, std::string_view b, int da, int db) {
    if (a.size() != b.size()) throw std::invalid_argument("l-mers have different lengths");
    return naive_distance(a, b) <= da + db;
}

ColumnProfile column_profile3(std::string_view a, std::string_view b, std::string_view c) {
    if (a.size() != b.size() || a.size() != c.size())
        throw std::invalid_argument("l-mers have different lengths");
    ColumnProfile p;
    for (size_t i = 0; i < a.size(); ++i) {
        const bool ab = a[i] == b[i], ac = a[i] == c[i], bc = b[i] == c[i];
        if (ab && ac) ++p.n0;
        else if (bc) ++p.n1;
        else if (ac) ++p.n2;
        else if (ab) ++p.n3;
        else ++p.n4;
    }
    return p;
}

bool triple_common_neighbor_exists(std::string_view a, std::string_view b, std::string_view c,
                                   const Budgets& budgets) {
    if (budgets.size() != 3) throw std::invalid_argument("triple check needs exactly 3 budgets");
    const ColumnProfile p = column_profile3(a, b, c);
    const int d1 = budgets[0], d2 = budgets[1], d3 = budgets[2];
    // pairwise distances from the profile: Hd(T_i,T_j) = n_i + n_j + n4
    if (p.n1 + p.n2 + p.n4 > d1 + d2) return false;
    if (p.n1 + p.n3 + p.n4 > d1 + d3) return false;
    if (p.n2 + p.n3 + p.n4 > d2 + d3) return false;
    return p.consensus_distance() <= d1 + d2 + d3;
}

std::optional<std::string> triple_witness(std::string_view a, std::string_view b,
                                          std::string_view c, const Budgets& budgets) {
    if (budgets.size() != 3) throw std::invalid_argument("triple witness needs exactly 3 budgets");
    if (!triple_common_neighbor_exists(a, b, c, budgets)) return std::nullopt;

    const size_t l = a.size();
    const std::array<std::string_view, 3> t{a, b, c};
    const std::array<int, 3> d{budgets[0], budgets[1], budgets[2]};

    // classify columns: 0..4 as in ColumnProfile
    std::vector<int> type(l);
    std::array<int, 5> n{};
    for (size_t i = 0; i < l; ++i) {
        const bool ab = a[i] == b[i], ac = a[i] == c[i], bc = b[i] == c[i];
        int ty = 4;
        if (ab && ac) ty = 0;
        else if (bc) ty = 1;
        else if (ac) ty = 2;
        else if (ab) ty = 3;
        type[i] = ty;
        ++n[static_cast<size_t>(ty)];
    }

    std::string m(l, '\0');

    // Case 1: some tuple member i has n_i >= d_i. Copy T_i everywhere, then
    // on the first d_i columns of type N_i take the character the other two
    // members agree on.
    for (int i = 0; i < 3; ++i) {
        if (n[static_cast<size_t>(i + 1)] < d[static_cast<size_t>(i)]) continue;
        const int other = (i == 0) ? 1 : 0;
        int left = d[static_cast<size_t>(i)];
        for (size_t col = 0; col < l; ++col) {
            if (type[col] == i + 1 && left > 0) {
                m[col] = t[static_cast<size_t>(other)][col];
                --left;
            } else {
                m[col] = t[static_cast<size_t>(i)][col];
            }
        }
        return m;
    }

    // Case 2: n_i < d_i for all i. Base assignment: T_1 on N0/N2/N3 columns,
    // T_2 on N1 columns. Each member i must additionally match on
    // max(0, n_i + n4 - d_i) columns of type N4; leftover N4 columns copy T_1.
    std::array<int, 3> need{};
    for (int i = 0; i < 3; ++i)
        need[static_cast<size_t>(i)] =
            std::max(0, n[static_cast<size_t>(i + 1)] + n[4] - d[static_cast<size_t>(i)]);
    int owner = 0;
    for (size_t col = 0; col < l; ++col) {
        switch (type[col]) {
            case 0:
            case 2:
            case 3: m[col] = a[col]; break;
            case 1: m[col] = b[col]; break;
            default:
                while (owner < 3 && need[static_cast<size_t>(owner)] == 0) ++owner;
                if (owner < 3) {
                    m[col] = t[static_cast<size_t>(owner)][col];
                    --need[static_cast<size_t>(owner)];
                } else {
                    m[col] = a[col];  // free column
                }
        }
    }
    return m;
}

bool necessary_condition_k(std::span<const std::string_view> tuple, const Budgets& budgets) {
    if (tuple.size() != budgets.size())
        throw std::invalid_argument("tuple size " + std::to_string(tuple.size()) +
                                    " does not match budget count " + std::to_string(budgets.size()));
    int sum = 0;
    for (int b : budgets) sum += b;
    return consensus_total_distance(tuple) <= sum;
}

TripleStats triple_stats(const PackedSequenceSet& set, const GroupPopcountTable& table,
                         LmerRef a, LmerRef b, LmerRef c) {
    const int g = set.alphabet().symbols_per_group16();
    const int full = set.full_groups();
    TripleStats s;
    uint32_t pos = 0;
    for (int i = 0; i <= full; ++i, pos += g) {
        uint16_t xab, xac, xbc;
        if (i < full) {
            const uint16_t wa = set.window16(a.seq, a.offset + pos);
            const uint16_t wb = set.window16(b.seq, b.offset + pos);
            const uint16_t wc = set.window16(c.seq, c.offset + pos);
            xab = wa ^ wb;
            xac = wa ^ wc;
            xbc = wb ^ wc;
        } else {
            if (set.tail_symbols() == 0) break;
            const uint16_t mask = set.tail_mask();
            const uint16_t wa = set.window16(a.seq, a.offset + pos);
            const uint16_t wb = set.window16(b.seq, b.offset + pos);
            const uint16_t wc = set.window16(c.seq, c.offset + pos);
            xab = (wa ^ wb) & mask;
            xac = (wa ^ wc) & mask;
            xbc = (wb ^ wc) & mask;
        }
        s.h12 += static_cast<int>(table.count(xab));
        s.h13 += static_cast<int>(table.count(xac));
        s.h23 += static_cast<int>(table.count(xbc));
        s.n4 += std::popcount(static_cast<uint16_t>(table.nonzero_groups(xab) &
                                                    table.nonzero_groups(xac) &
                                                    table.nonzero_groups(xbc)));
    }
    return s;
}

bool triple_common_neighbor_exists(const PackedSequenceSet& set, const GroupPopcountTable& table,
                                   LmerRef a, LmerRef b, LmerRef c, int d1, int d2, int d3) {
    const TripleStats s = triple_stats(set, table, a, b, c);
    return s.h12 <= d1 + d2 && s.h13 <= d1 + d3 && s.h23 <= d2 + d3 &&
           s.consensus() <= d1 + d2 + d3;
}

}  // namespace pms8
