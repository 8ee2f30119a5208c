#include "pms8/packed_seq.hpp"

#include <bit>
#include <stdexcept>

namespace pms8 {

GroupPopcountTable::GroupPopcountTable(int bits_per_symbol)
    : width_(bits_per_symbol), groups_(16 / bits_per_symbol) {
    if (bits_per_symbol < 1 || bits_per_symbol > 16)
        throw std::invalid_argument("group width must be in [1,16], got " +
                                    std::to_string(bits_per_symbol));
    counts_.resize(size_t{1} << 16);
    masks_.resize(size_t{1} << 16);
    const uint32_t group_mask = (uint32_t{1} << width_) - 1;
    for (uint32_t x = 0; x < (uint32_t{1} << 16); ++x) {
        uint8_t cnt = 0;
        uint16_t mask = 0;
        for (int g = 0; g < groups_; ++g) {
            if ((x >> (g * width_)) & group_mask) {
                ++cnt;
                mask = static_cast<uint16_t>(mask | (1u << g));
            }
        }
        counts_[x] = cnt;
        masks_[x] = mask;
    }
}

PackedSequenceSet::PackedSequenceSet(std::vector<std::string> sequences, Alphabet alphabet,
                                     int motif_length)
    : alpha_(std::move(alphabet)), raw_(std::move(sequences)) {
    if (raw_.empty()) throw std::invalid_argument("no input sequences");
    n_ = static_cast<int>(raw_.size());
    m_ = static_cast<int>(raw_[0].size());
    l_ = motif_length;
    if (l_ < 1) throw std::invalid_argument("motif length must be >= 1");
    if (l_ > m_)
        throw std::invalid_argument("motif length " + std::to_string(l_) +
                                    " exceeds sequence length " + std::to_string(m_));
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(raw_[i].size()) != m_)
            throw std::invalid_argument("sequence " + std::to_string(i) + " has length " +
                                        std::to_string(raw_[i].size()) + ", expected " +
                                        std::to_string(m_));
    }

    bits_ = alpha_.bits_per_symbol();
    group_ = alpha_.symbols_per_group16();
    window_mask_ = (uint32_t{1} << (group_ * bits_)) - 1;
    tail_mask_ = symbol_mask(tail_symbols() == 0 ? group_ : tail_symbols());
    for (int j = 0; (j + 1) * bits_ <= 64; ++j) group_lsb64_ |= uint64_t{1} << (j * bits_);
    if ((l_ + group_ - 1) / group_ > 64 || chunks64() > 32)
        throw std::invalid_argument("motif length too large for this alphabet");

    refs_.reserve(static_cast<size_t>(total_lmers()));
    for (uint32_t s = 0; s < static_cast<uint32_t>(n_); ++s)
        for (uint32_t o = 0; o < static_cast<uint32_t>(windows_per_seq()); ++o)
            refs_.push_back(LmerRef{s, o});

    codes_.resize(size_t(n_) * m_);
    stride_ = (size_t(m_) * bits_ + 7) / 8 + 9;  // slack for unaligned 64-bit loads
    packed_.assign(size_t(n_) * stride_, 0);
    for (int i = 0; i < n_; ++i) {
        uint8_t* base = packed_.data() + size_t(i) * stride_;
        for (int j = 0; j < m_; ++j) {
            const char ch = raw_[i][static_cast<size_t>(j)];
            if (!alpha_.contains(ch))
                throw std::invalid_argument("sequence " + std::to_string(i) + ", position " +
                                            std::to_string(j) + ": symbol '" + ch +
                                            "' not in alphabet " + alpha_.name());
            const uint8_t c = alpha_.code(ch);
            codes_[size_t(i) * m_ + j] = c;
            const uint32_t bit = static_cast<uint32_t>(j) * bits_;
            uint32_t word;
            std::memcpy(&word, base + (bit >> 3), sizeof word);
            word |= static_cast<uint32_t>(c) << (bit & 7);
            std::memcpy(base + (bit >> 3), &word, sizeof word);
        }
    }
}

std::string PackedSequenceSet::decode_window(uint32_t seq, uint32_t offset, int len) const {
    return alpha_.decode(codes_row(seq) + offset, len);
}

uint64_t PackedSequenceSet::packed_words() const {
    return (packed_.size() + codes_.size() + 7) / 8 + refs_.size();
}

void pack_candidate64(const PackedSequenceSet& set, const uint8_t* codes, PackedChunks& out) {
    const int b = set.alphabet().bits_per_symbol();
    const int spw = set.symbols_per_word64();
    const int l = set.motif_length();
    for (int pos = 0, w = 0; pos < l; pos += spw, ++w) {
        uint64_t v = 0;
        const int lim = std::min(spw, l - pos);
        for (int s = 0; s < lim; ++s) v |= static_cast<uint64_t>(codes[pos + s]) << (s * b);
        out.c[static_cast<size_t>(w)] = v;
    }
}

void pack_candidate(const PackedSequenceSet& set, const uint8_t* codes, PackedWindows& out) {
    const int b = set.alphabet().bits_per_symbol();
    const int g = set.alphabet().symbols_per_group16();
    const int l = set.motif_length();
    out.groups = (l + g - 1) / g;
    for (int w = 0, pos = 0; w < out.groups; ++w, pos += g) {
        uint32_t v = 0;
        const int lim = std::min(g, l - pos);
        for (int s = 0; s < lim; ++s) v |= static_cast<uint32_t>(codes[pos + s]) << (s * b);
        out.win[static_cast<size_t>(w)] = static_cast<uint16_t>(v);
    }
}

int hamming(const PackedSequenceSet& set, const GroupPopcountTable& table, LmerRef a, LmerRef b) {
    const auto max_off = static_cast<uint32_t>(set.windows_per_seq() - 1);
    if (a.seq >= static_cast<uint32_t>(set.count()) || b.seq >= static_cast<uint32_t>(set.count()) ||
        a.offset > max_off || b.offset > max_off)
        throw std::out_of_range("l-mer reference out of range");
    if (table.group_width() != set.alphabet().bits_per_symbol())
        throw std::invalid_argument("popcount table width does not match alphabet");
    return hamming_unchecked(set, table, a, b);
}

}  // namespace pms8
