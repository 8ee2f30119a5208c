#include "pms8/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pms8 {

int naive_hamming(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) throw std::invalid_argument("l-mers have different lengths");
    int d = 0;
    for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

bool naive_is_motif(const Problem& problem, std::string_view motif,
                    std::vector<int>* witness_offsets) {
    const int l = static_cast<int>(motif.size());
    if (witness_offsets) witness_offsets->clear();
    for (const std::string& seq : problem.sequences) {
        int found = -1;
        for (int j = 0; j + l <= static_cast<int>(seq.size()); ++j) {
            int mm = 0;
            for (int p = 0; p < l; ++p) {
                mm += seq[static_cast<size_t>(j + p)] != motif[static_cast<size_t>(p)];
                if (mm > problem.max_mismatches) break;
            }
            if (mm <= problem.max_mismatches) {
                found = j;
                break;
            }
        }
        if (found < 0) return false;
        if (witness_offsets) witness_offsets->push_back(found);
    }
    return true;
}

namespace {

void check_guard(int sigma, int l, int64_t guard) {
    long double space = std::pow(static_cast<long double>(sigma), l);
    if (space > static_cast<long double>(guard))
        throw std::invalid_argument("enumeration space " + std::to_string(sigma) + "^" +
                                    std::to_string(l) + " exceeds guard " + std::to_string(guard));
}

// odometer over Sigma^l in code order
bool advance(std::string& word, const Alphabet& alphabet) {
    const int sigma = alphabet.size();
    for (int i = static_cast<int>(word.size()) - 1; i >= 0; --i) {
        const auto pos = static_cast<size_t>(i);
        const int c = alphabet.code(word[pos]) + 1;
        if (c < sigma) {
            word[pos] = alphabet.symbol(static_cast<uint8_t>(c));
            return true;
        }
        word[pos] = alphabet.symbol(0);
    }
    return false;
}

}  // namespace

std::vector<std::string> brute_force_solve(const Problem& problem, int64_t enumeration_guard) {
    problem.validate();
    check_guard(problem.alphabet.size(), problem.motif_length, enumeration_guard);
    std::vector<std::string> motifs;
    std::string word(static_cast<size_t>(problem.motif_length), problem.alphabet.symbol(0));
    do {
        if (naive_is_motif(problem, word)) motifs.push_back(word);
    } while (advance(word, problem.alphabet));
    std::sort(motifs.begin(), motifs.end());
    return motifs;
}

std::optional<std::string> brute_force_common_neighbor(std::span<const std::string> tuple,
                                                       std::span<const int> budgets,
                                                       const Alphabet& alphabet,
                                                       int64_t enumeration_guard) {
    if (tuple.empty()) throw std::invalid_argument("empty tuple");
    if (tuple.size() != budgets.size())
        throw std::invalid_argument("budget count does not match tuple size");
    const int l = static_cast<int>(tuple[0].size());
    for (const auto& s : tuple)
        if (static_cast<int>(s.size()) != l)
            throw std::invalid_argument("tuple l-mers have mixed lengths");
    check_guard(alphabet.size(), l, enumeration_guard);

    std::string word(static_cast<size_t>(l), alphabet.symbol(0));
    do {
        bool ok = true;
        for (size_t i = 0; i < tuple.size() && ok; ++i)
            ok = naive_hamming(word, tuple[i]) <= budgets[i];
        if (ok) return word;
    } while (advance(word, alphabet));
    return std::nullopt;
}

}  // namespace pms8
